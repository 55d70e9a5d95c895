#pragma once

// Radially symmetric problem on the annulus R2 < |x| < R1 in R^n. With
// u = upsilon(|x|) and v = upsilon', the energy
//   I[u] = int_Omega nu H(|grad u|) - f u
// equals gamma_n K(v) for the 1D problem on [R2, R1] with weight
// theta(r) = nu r^(n-1) and forcing r^(n-1) f.

#include <cstdint>
#include <string>
#include <vector>

#include "dwell/extremum_probe.hpp"
#include "dwell/grid.hpp"
#include "dwell/problem.hpp"
#include "dwell/profile.hpp"

namespace dwell {

struct RadialProblem {
  int n = 2;
  double r2 = 1.0;  // inner radius
  double r1 = 2.0;  // outer radius
  double lambda = 1.0;
  double nu = 1.0;
  Profile forcing = Profile::constant(0.0);
};

// Checks n >= 1, 0 < r2 < r1, lambda > 0, nu > 0.
RadialProblem make_radial_problem(int n, double r2, double r1, double lambda, double nu,
                                  Profile forcing);

// Surface measure of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2).
double gamma_n(int n);

Problem reduced_problem(const RadialProblem& rp);

// Balance int theta f = 0, constant sign of F and
// ||r^(n-1) f||_1 < nu R2^(n-1) kappa^3, evaluated on the reduced problem.
ValidationReport validate_radial(const RadialProblem& rp, std::size_t intervals = kDefaultIntervals);

// theta F = -int_R2^r rho^(n-1) f, the load of the reduced problem.
GridFunction reduced_load(const RadialProblem& rp, std::size_t intervals);

// F(r) = -(1/r^(n-1)) int_R2^r rho^(n-1) f. DomainError if some |F| / nu
// reaches kappa^3.
GridFunction build_radial_potential(const RadialProblem& rp, std::size_t intervals);

// gamma_n K(v) on the reduced problem, v = upsilon' sampled on the grid.
double eval_I(const RadialProblem& rp, const GridFunction& v);

// The alternative convention writes the potential with 1/r^n; its candidate
// derivatives are rho F(rho) / E_j^{-1}(rho^2 F(rho)^2) in that convention.
enum class PotentialConvention { shell, volume };

// Candidate derivative profiles built literally from the chosen convention
// with E at the problem's nu.
Candidates radial_candidates(const RadialProblem& rp, std::size_t intervals,
                             PotentialConvention convention);

struct AssertionCheck {
  std::string name;        // minimizer_u1, minimizer_u2, maximizer_u3
  bool admissible = false;  // candidate derivative lies in C0
  double endpoint_a = 0.0;
  double endpoint_b = 0.0;
  double deviation = 0.0;  // max node distance to the stationary profile
  bool holds = false;
  std::string reason;
};

struct AssertionSummary {
  std::vector<AssertionCheck> checks;
  std::vector<std::string> assertions_true;
  std::vector<std::string> assertions_false;
};

// Judges the three claims (u1, u2 local minimizers, u3 local maximizer) from
// C0 admissibility, coincidence with the unique stationary profile and the
// sup-norm probe verdict.
AssertionSummary assess_candidate_claims(const Candidates& candidates, const GridFunction& stationary,
                                         const ProbeReport& sup_probe, double coincidence_tol);

struct RefutationOptions {
  std::size_t intervals = kDefaultIntervals;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  double p = 2.0;
  double gamma_exp = 0.9;
  std::vector<double> n_values{10.0, 100.0, 1000.0, 10000.0};
  double coincidence_tol = 1e-12;
};

struct RadialRefutation {
  ValidationReport validation;
  GridFunction potential;   // F(r), shell convention
  GridFunction stationary;  // z2(F / nu)
  Candidates candidates;
  double convention_gap = 0.0;  // max |candidate(shell) - candidate(volume)|
  Certificate certificate;
  ProbeReport sup_probe;
  ProbeReport lp_probe;
  AssertionSummary assertions;
  bool passed = false;
};

RadialRefutation radial_refutation(const RadialProblem& rp, const RefutationOptions& options = {});

}  // namespace dwell
