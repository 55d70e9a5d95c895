#pragma once

// Problem data for J(u) = int theta H(u') - f u on [a, b] with
// H(y) = (y^2/2 - lambda)^2 / 2. Integrating f u by parts against
// F(x) = -int_a^x f turns J on C^1 functions with u'(a) = u'(b) = 0 into
//
//   K(v) = int theta H(v) - F v,      v = u' in C0[a, b].
//
// A constant weight theta = nu gives the nu-scaled energy of the 1D problem;
// the radial reduction uses theta(r) = nu r^(n-1) and the forcing r^(n-1) f.

#include <cstddef>
#include <vector>

#include "dwell/grid.hpp"
#include "dwell/profile.hpp"

namespace dwell {

inline constexpr std::size_t kDefaultIntervals = 2048;

struct Problem {
  double a = 0.0;
  double b = 1.0;
  double lambda = 1.0;
  Profile theta = Profile::constant(1.0);
  Profile forcing = Profile::constant(0.0);
  double mu = 1.0;  // min of theta over [a, b]
};

// Checks a < b, lambda > 0 and mu > 0; mu is the minimum of theta over its
// samples, or over a dense scan for presets.
Problem make_problem(double a, double b, double lambda, Profile theta, Profile forcing);

struct ValidationReport {
  // int_a^b f = 0 up to 1e-10 (b - a) ||f||_inf.
  bool balance_ok = false;
  double balance_integral = 0.0;
  double balance_tolerance = 0.0;
  // F keeps one strict sign on the interior nodes.
  bool sign_ok = false;
  int potential_sign = 0;
  // ||f||_1 < mu kappa^3; for theta = nu this is the nu-scaled smallness bound.
  bool l1_ok = false;
  double l1_norm = 0.0;
  double l1_bound = 0.0;
  // ||F / theta||_inf < kappa^3, so every node lies on the z2 branch domain.
  bool finf_ok = false;
  double potential_sup = 0.0;
  double scaled_potential_sup = 0.0;
  double finf_bound = 0.0;
  // Informational: strict sign changes of f.
  std::size_t forcing_zero_crossings = 0;
  bool analytic = false;

  bool all_ok() const { return balance_ok && sign_ok && l1_ok && finf_ok; }
};

// Never throws on failed conditions; QuadratureError on non-finite samples.
ValidationReport validate_forcing(const Problem& problem,
                                  std::size_t intervals = kDefaultIntervals);

// F(x) = -int_a^x f by cumulative Simpson; F(a) = 0 exactly. Requires an
// even interval count >= 8.
GridFunction build_potential(const Problem& problem, std::size_t intervals);

std::vector<double> theta_on(const Problem& problem, const Grid& grid);

// +1 or -1 when F has that strict sign at every interior node, else 0.
int interior_sign(const GridFunction& fn);

double eval_H(double y, double lambda);

}  // namespace dwell
