#pragma once

// Stationary profile, candidate profiles built from the dual cubic, the
// sup-norm local-maximum certificate and the spike/smooth probes that show
// where extremality and Frechet differentiability fail.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwell/functional.hpp"
#include "dwell/grid.hpp"
#include "dwell/problem.hpp"

namespace dwell {

// v(x) = z2(F(x) / theta(x)) at every node. Endpoints are set to exactly 0
// when F vanishes there (F in C0). DomainError if some |F/theta| >= kappa^3.
GridFunction stationary_point(const Problem& problem, const GridFunction& F);

// Profiles F / E_j^{-1}(F^2) of the dual construction, j = 1, 2, 3, evaluated
// node-wise with E taken at nu = theta(x). At nodes where F vanishes the
// analytic limits are used: v1 -> s sqrt(2 lambda), v2 -> -s sqrt(2 lambda),
// v3 -> 0, with s the interior sign of F.
struct Candidates {
  GridFunction v1;
  GridFunction v2;
  GridFunction v3;
  int potential_sign = 0;
};

// DomainError when F changes sign on the interior.
Candidates dual_candidates(const Problem& problem, const GridFunction& F);

struct Certificate {
  double gamma_bar = 0.0;  // max |v|
  double eta = 0.0;        // -(3/2 gamma_bar^2 - lambda) / 2
  double epsilon = 0.0;    // 2 (sqrt(gamma_bar^2 + 2 eta) - gamma_bar)
  double lambda = 0.0;

  // -eta + gamma_bar t / 2 + t^2 / 8, negative exactly on [0, epsilon).
  double bracket_bound(double t) const { return -eta + 0.5 * gamma_bar * t + 0.125 * t * t; }
};

// CertificateError if max |v| >= kappa.
Certificate local_max_certificate(const Problem& problem, const GridFunction& v);

enum class ProbeMode { sup_max, lp_not_min, lp_not_max, lp_nonextremum, frechet, single_power };

std::string to_string(ProbeMode mode);

struct ProbeSample {
  std::string series;
  std::size_t index = 0;
  double x_or_n = 0.0;  // trial magnitude, n, or k
  double value_1 = 0.0;  // a norm of the perturbation
  double value_2 = 0.0;  // Delta K, or a remainder ratio
  double bound = 0.0;    // radius, error bound or tolerance used by `ok`
  bool ok = false;
};

struct ProbeReport {
  ProbeMode mode = ProbeMode::sup_max;
  std::string exponent;  // p, "inf" for the sup norm
  std::vector<ProbeSample> samples;
  std::optional<double> gamma_exp;
  std::optional<double> fitted_slope;
  std::optional<double> expected_slope;
  std::optional<double> slope_tolerance;  // relative
  std::optional<double> n_star;
  std::string maximizer_status;
  std::string rule;
  std::vector<std::string> notes;
  bool passed = false;

  std::size_t count_ok(const std::string& series) const;
  std::size_t count(const std::string& series) const;
};

// Tent of height peak() on [x0, x0 + 2/n]. For finite p the slope is
// alpha_n = n^(1 + gamma/p), so ||h_n||_p = (2/(p+1))^(1/p) n^((gamma-1)/p).
// For p = inf the slope is n^gamma, so ||h_n||_inf = n^(gamma - 1).
struct SpikeFamily {
  LpExponent p = LpExponent::finite(2.0);
  double gamma_exp = 0.5;
  double n = 1.0;
  double x0 = 0.0;
  double a = 0.0;  // host interval
  double b = 1.0;

  double alpha() const;
  double peak() const;
  double support_end() const { return x0 + 2.0 / n; }
  double midpoint() const { return x0 + 1.0 / n; }
  double operator()(double x) const;
  // DomainError unless n >= 1, 0 < gamma < 1 and the support fits in [a, b].
  void validate() const;
};

struct SpikeMoments {
  double moment = 0.0;   // int |h_n|^s
  double lp_norm = 0.0;  // ||h_n||_p
};

// Closed forms, no quadrature.
SpikeMoments spike_moments(const SpikeFamily& family, double s);

GridFunction spike_on_grid(const SpikeFamily& family, const Grid& grid);

// int g h_n^s approximated by g(midpoint) times the closed-form moment; the
// bound is (Lipschitz estimate of g) (1/n) moment.
struct SpikeIntegral {
  double estimate = 0.0;
  double bound = 0.0;
};
SpikeIntegral spike_integral(const GridFunction& g, const SpikeFamily& family, int s);

// Midpoint of ((p-1)/(s-1), 1) when that window is non-empty, else 0.5.
double default_gamma(LpExponent p, int s);

// Sum of 1-5 sine modes vanishing at both endpoints, rescaled so the largest
// node magnitude equals target_sup. Deterministic in (seed, index).
GridFunction random_smooth_perturbation(const Grid& grid, std::uint64_t seed, std::uint64_t index,
                                        double target_sup);

double delta_K(const Problem& problem, const GridFunction& F, const GridFunction& v,
               const GridFunction& h);

// Random C0 perturbations with 0 < ||h||_inf < epsilon; every trial must give
// Delta K < 0 and a negative expansion bracket wherever h != 0. An extra
// "adversarial" sample uses h = -v scaled to 0.9 epsilon when v != 0.
ProbeReport sup_norm_probe(const Problem& problem, const GridFunction& F, const GridFunction& v,
                           std::size_t trials, std::uint64_t seed);

struct LpProbeOptions {
  std::optional<double> gamma_exp;
  std::optional<double> x0;
  std::size_t smooth_count = 8;
};

// Spike series: Delta K(v + h_n) > 0 for every n >= n_star while ||h_n||_p
// decreases. Smooth series: h_k = 0.9 epsilon sin-bump / k has Delta K < 0
// while ||h_k||_p decreases. DomainError for p >= 4.
ProbeReport lp_nonextremum_probe(const Problem& problem, const GridFunction& F,
                                 const GridFunction& v, LpExponent p,
                                 const std::vector<double>& n_values,
                                 const LpProbeOptions& options = {});

// The smooth half alone; valid for every p. For p in [4, inf) the maximizer
// status is reported as inconclusive.
ProbeReport smooth_descent_probe(const Problem& problem, const GridFunction& F,
                                 const GridFunction& v, LpExponent p, std::size_t count = 8);

struct FrechetOptions {
  // Single power s in {2, 3, 4} with g = g_s; empty means the full remainder
  // K(v + h) - K(v) - T_v(h).
  std::optional<int> power;
  std::optional<double> gamma_exp;
  std::optional<double> x0;
};

// Normalised remainder along the spike family. For p below the critical
// power the log-log slope must match its closed-form rate within 10%; at or
// above it the ratio must decrease to 0.
ProbeReport frechet_probe(const Problem& problem, const GridFunction& v, LpExponent p,
                          const std::vector<double>& n_values, const FrechetOptions& options = {});

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// u(x) = u0 + int_a^x v by cumulative Simpson.
GridFunction integrate_profile(const GridFunction& v, double u0);

// ||u||_inf + ||u'||_inf.
double c1_norm(const GridFunction& u, const GridFunction& du);

}  // namespace dwell
