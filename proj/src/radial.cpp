#include "dwell/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dwell/cubic_branches.hpp"
#include "dwell/errors.hpp"
#include "dwell/functional.hpp"

namespace dwell {

RadialProblem make_radial_problem(int n, double r2, double r1, double lambda, double nu,
                                  Profile forcing) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(r2 > 0.0) || !(r1 > r2) || !std::isfinite(r1)) {
    throw DomainError("radii must satisfy 0 < r2 < r1");
  }
  if (!(lambda > 0.0) || !(nu > 0.0)) throw DomainError("lambda and nu must be positive");
  forcing.require_defined_on(r2, r1);
  return RadialProblem{n, r2, r1, lambda, nu, std::move(forcing)};
}

double gamma_n(int n) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  // gamma_n = 2 pi^(n/2) / Gamma(n/2) through gamma_{n+2} = 2 pi gamma_n / n,
  // which keeps gamma_2 = 2 pi and gamma_3 = 4 pi exact in floating point.
  double g = n % 2 == 0 ? 2.0 * std::numbers::pi : 2.0;
  for (int k = n % 2 == 0 ? 2 : 1; k < n; k += 2) g = 2.0 * std::numbers::pi * g / k;
  return g;
}

Problem reduced_problem(const RadialProblem& rp) {
  return make_problem(rp.r2, rp.r1, rp.lambda, Profile::polynomial({rp.nu}, rp.n - 1),
                      rp.forcing.times_power(rp.n - 1));
}

ValidationReport validate_radial(const RadialProblem& rp, std::size_t intervals) {
  return validate_forcing(reduced_problem(rp), intervals);
}

GridFunction reduced_load(const RadialProblem& rp, std::size_t intervals) {
  return build_potential(reduced_problem(rp), intervals);
}

GridFunction build_radial_potential(const RadialProblem& rp, std::size_t intervals) {
  const GridFunction load = reduced_load(rp, intervals);
  const Grid& grid = load.grid();
  std::vector<double> values(grid.size());
  const double k3 = g_critical_value(rp.lambda);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = load[i] / std::pow(grid.node(i), rp.n - 1);
    if (!(std::abs(values[i]) / rp.nu < k3)) {
      throw DomainError("radial potential violates |F| / nu < kappa^3");
    }
  }
  return GridFunction(grid, std::move(values));
}

double eval_I(const RadialProblem& rp, const GridFunction& v) {
  const Problem reduced = reduced_problem(rp);
  const GridFunction load = build_potential(reduced, v.grid().intervals());
  if (!(load.grid() == v.grid())) throw GridMismatch("profile grid does not span [R2, R1]");
  return gamma_n(rp.n) * eval_K(reduced, load, v);
}

Candidates radial_candidates(const RadialProblem& rp, std::size_t intervals,
                             PotentialConvention convention) {
  const GridFunction F = build_radial_potential(rp, intervals);
  const int sign = interior_sign(F);
  if (sign == 0) throw DomainError("candidate profiles need F of constant sign on (R2, R1)");
  const Grid& grid = F.grid();
  const double well = std::sqrt(2.0 * rp.lambda);
  const double zero_tol = endpoint_zero_tolerance(F.values());
  std::vector<double> v1(grid.size()), v2(grid.size()), v3(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    // Load A entering E(y) = A^2 and the numerator of A / E_j^{-1}(A^2).
    const double load = convention == PotentialConvention::shell ? F[i] : r * (F[i] / r);
    const bool endpoint = i == 0 || i == grid.intervals();
    if (load == 0.0 || (endpoint && std::abs(load) <= zero_tol)) {
      v1[i] = sign * well;
      v2[i] = -sign * well;
      v3[i] = 0.0;
      continue;
    }
    const EBranchTriple e = solve_e(load * load, rp.lambda, rp.nu);
    v1[i] = load / e.e1;
    v2[i] = load / e.e2;
    v3[i] = load / e.e3;
  }
  return {GridFunction(grid, std::move(v1)), GridFunction(grid, std::move(v2)),
          GridFunction(grid, std::move(v3)), sign};
}

AssertionSummary assess_candidate_claims(const Candidates& candidates, const GridFunction& stationary,
                                         const ProbeReport& sup_probe, double coincidence_tol) {
  AssertionSummary summary;
  const double tol = coincidence_tol * std::max(1.0, stationary.sup_norm());
  struct Claim {
    const char* name;
    const GridFunction* profile;
    bool maximizer;
  };
  const Claim claims[] = {{"minimizer_u1", &candidates.v1, false},
                          {"minimizer_u2", &candidates.v2, false},
                          {"maximizer_u3", &candidates.v3, true}};
  for (const Claim& claim : claims) {
    AssertionCheck check;
    check.name = claim.name;
    const GridFunction& v = *claim.profile;
    require_same_grid(v, stationary);
    check.admissible = v.in_c0();
    check.endpoint_a = v[0];
    check.endpoint_b = v[v.size() - 1];
    for (std::size_t i = 0; i < v.size(); ++i) {
      check.deviation = std::max(check.deviation, std::abs(v[i] - stationary[i]));
    }
    const bool coincides = check.deviation <= tol;
    if (!check.admissible) {
      check.reason = "derivative does not vanish at the endpoints (Neumann constraint fails)";
    } else if (!coincides) {
      check.reason = "admissible but not the unique stationary profile";
    } else if (claim.maximizer) {
      check.holds = sup_probe.passed;
      check.reason = sup_probe.passed ? "equals the stationary profile, a strict sup-norm local maximizer"
                                      : "sup-norm probe did not confirm the maximum";
    } else {
      check.holds = !sup_probe.passed;
      check.reason = "the only stationary profile is a local maximizer, so no local minimizer exists";
    }
    (check.holds ? summary.assertions_true : summary.assertions_false).push_back(check.name);
    summary.checks.push_back(std::move(check));
  }
  return summary;
}

RadialRefutation radial_refutation(const RadialProblem& rp, const RefutationOptions& options) {
  const Problem reduced = reduced_problem(rp);
  const GridFunction load = build_potential(reduced, options.intervals);
  GridFunction potential = build_radial_potential(rp, options.intervals);
  GridFunction stationary = stationary_point(reduced, load);
  Candidates candidates = dual_candidates(reduced, load);
  const Candidates shell = radial_candidates(rp, options.intervals, PotentialConvention::shell);
  const Candidates volume = radial_candidates(rp, options.intervals, PotentialConvention::volume);

  RadialRefutation out{validate_forcing(reduced, options.intervals),
                       std::move(potential),
                       std::move(stationary),
                       std::move(candidates),
                       0.0,
                       {},
                       {},
                       {},
                       {},
                       false};
  for (const auto* pair : {&shell, &volume}) {
    for (std::size_t i = 0; i < load.size(); ++i) {
      out.convention_gap = std::max({out.convention_gap, std::abs(pair->v1[i] - out.candidates.v1[i]),
                                     std::abs(pair->v2[i] - out.candidates.v2[i]),
                                     std::abs(pair->v3[i] - out.candidates.v3[i])});
    }
  }
  out.certificate = local_max_certificate(reduced, out.stationary);
  out.sup_probe = sup_norm_probe(reduced, load, out.stationary, options.trials, options.seed);
  LpProbeOptions lp;
  lp.gamma_exp = options.gamma_exp;
  out.lp_probe = lp_nonextremum_probe(reduced, load, out.stationary, LpExponent::finite(options.p),
                                      options.n_values, lp);
  out.assertions = assess_candidate_claims(out.candidates, out.stationary, out.sup_probe,
                                           options.coincidence_tol);
  out.passed = out.validation.all_ok() && out.sup_probe.passed && out.lp_probe.passed &&
               out.assertions.assertions_true == std::vector<std::string>{"maximizer_u3"};
  return out;
}

}  // namespace dwell
