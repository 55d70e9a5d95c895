#include "dwell/cubic_branches.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be a positive finite number");
  }
}

// One guarded Newton step: kept only if it stays in [lo, hi] and does not
// increase the residual. Near a double root the derivative vanishes and the
// step is skipped.
template <class Fn, class Dfn>
double polish(double x, double target, double lo, double hi, Fn fn, Dfn dfn) {
  const double r = fn(x) - target;
  const double d = dfn(x);
  if (r == 0.0 || d == 0.0) return x;
  const double next = x - r / d;
  if (!(next >= lo && next <= hi)) return x;
  return std::abs(fn(next) - target) <= std::abs(r) ? next : x;
}

}  // namespace

double g_cubic(double z, double lambda) { return z * (0.5 * z * z - lambda); }

double e_cubic(double y, double lambda, double nu) { return 2.0 * y * y * (lambda + y / nu); }

double kappa(double lambda) { return std::sqrt(2.0 * lambda / 3.0); }

double g_critical_value(double lambda) {
  const double k = kappa(lambda);
  return k * k * k;
}

double e_critical_value(double lambda, double nu) {
  return 8.0 * lambda * lambda * lambda * nu * nu / 27.0;
}

double g_residual_tolerance(double a_value, double lambda) {
  const double k3 = g_critical_value(lambda);
  if (std::abs(a_value) > 0.99 * k3) return 1e-8;
  return 1e-12 * std::max(1.0, k3);
}

BranchTriple solve_g(double a_value, double lambda) {
  require_positive(lambda, "lambda");
  const double k = kappa(lambda);
  const double k3 = k * k * k;
  if (!std::isfinite(a_value) || !(std::abs(a_value) < k3)) {
    throw DomainError("solve_g: |A| must be below kappa^3 = " + std::to_string(k3));
  }
  // z^3 - 2 lambda z - 2A = 0 has roots 2 kappa cos(phi/3 - 2 pi j/3) with
  // cos(phi) = A / kappa^3. Writing phi = pi/2 - beta turns the middle branch
  // into -2 kappa sin(beta/3), which is exact at A = 0 and odd in A.
  const double beta = std::asin(std::clamp(a_value / k3, -1.0, 1.0));
  const double third = beta / 3.0;
  BranchTriple out;
  out.a_value = a_value;
  out.z1 = -2.0 * k * std::cos(kPi / 6.0 + third);
  out.z2 = -2.0 * k * std::sin(third);
  out.z3 = 2.0 * k * std::cos(kPi / 6.0 - third);

  auto g = [lambda](double z) { return g_cubic(z, lambda); };
  auto dg = [lambda](double z) { return 1.5 * z * z - lambda; };
  out.z1 = polish(out.z1, a_value, -2.0 * k, -k, g, dg);
  out.z2 = polish(out.z2, a_value, -k, k, g, dg);
  out.z3 = polish(out.z3, a_value, k, 2.0 * k, g, dg);
  return out;
}

double branch_z2(double a_value, double lambda) {
  require_positive(lambda, "lambda");
  const double k = kappa(lambda);
  const double k3 = k * k * k;
  if (!std::isfinite(a_value) || !(std::abs(a_value) < k3)) {
    throw DomainError("branch_z2: |A| must be below kappa^3 = " + std::to_string(k3));
  }
  const double z = -2.0 * k * std::sin(std::asin(std::clamp(a_value / k3, -1.0, 1.0)) / 3.0);
  return polish(
      z, a_value, -k, k, [lambda](double x) { return g_cubic(x, lambda); },
      [lambda](double x) { return 1.5 * x * x - lambda; });
}

EBranchTriple solve_e(double a2_value, double lambda, double nu) {
  require_positive(lambda, "lambda");
  require_positive(nu, "nu");
  const double emax = e_critical_value(lambda, nu);
  if (!std::isfinite(a2_value) || a2_value < 0.0 || !(a2_value < emax)) {
    throw DomainError("solve_e: A2 must lie in [0, 8 lambda^3 nu^2 / 27)");
  }
  EBranchTriple out;
  out.a2_value = a2_value;
  if (a2_value == 0.0) {
    out.e3 = -nu * lambda;
    return out;
  }
  // With y = nu w: w^3 + lambda w^2 - A2/(2 nu^2) = 0, and w = t - lambda/3
  // gives t = (2 lambda/3) cos(phi/3 - 2 pi j/3), cos(phi) = -1 + delta.
  // psi = pi - phi is evaluated directly so the two small roots near the
  // double root at 0 carry no cancellation.
  const double delta = 27.0 * a2_value / (4.0 * lambda * lambda * lambda * nu * nu);
  const double psi = 2.0 * std::asin(std::min(1.0, std::sqrt(0.5 * delta)));
  const double s6 = std::sin(psi / 6.0);
  const double w1 = (4.0 * lambda / 3.0) * std::sin(kPi / 3.0 - psi / 6.0) * s6;
  const double w2 = -(4.0 * lambda / 3.0) * std::sin(kPi / 3.0 + psi / 6.0) * s6;
  const double w3 = -(2.0 * lambda / 3.0) * std::cos(psi / 3.0) - lambda / 3.0;

  auto e = [lambda, nu](double y) { return e_cubic(y, lambda, nu); };
  auto de = [lambda, nu](double y) { return 4.0 * lambda * y + 6.0 * y * y / nu; };
  const double nl = nu * lambda;
  out.e1 = polish(nu * w1, a2_value, 0.0, nl / 3.0, e, de);
  out.e2 = polish(nu * w2, a2_value, -2.0 * nl / 3.0, 0.0, e, de);
  out.e3 = polish(nu * w3, a2_value, -nl, -2.0 * nl / 3.0, e, de);
  return out;
}

CorrespondenceResidual correspondence_check(double a_value, double lambda, double nu) {
  require_positive(nu, "nu");
  if (!(a_value > 0.0)) {
    throw DomainError("correspondence_check: A must be positive");
  }
  const BranchTriple z = solve_g(a_value, lambda);
  const double scaled = nu * a_value;
  const EBranchTriple y = solve_e(scaled * scaled, lambda, nu);
  CorrespondenceResidual r;
  r.z1_e2 = std::abs(z.z1 * (y.e2 / nu) - a_value);
  r.z2_e3 = std::abs(z.z2 * (y.e3 / nu) - a_value);
  r.z3_e1 = std::abs(z.z3 * (y.e1 / nu) - a_value);
  return r;
}

}  // namespace dwell
