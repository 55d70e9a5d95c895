#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's solvers or quadrature rules.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Plain bisection on a sign-changing bracket, run to floating-point resolution.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect: bracket does not change sign");
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double kappa(double lambda) { return std::sqrt(2.0 * lambda / 3.0); }

// Root of z (z^2/2 - lambda) = A on bracket 1, 2 or 3:
// (-2k, -k), (-k, k), (k, 2k).
inline double g_root(double a_value, double lambda, int branch) {
  const double k = kappa(lambda);
  auto fn = [&](double z) { return z * (0.5 * z * z - lambda) - a_value; };
  if (branch == 1) return bisect(fn, -2.0 * k, -k);
  if (branch == 2) return bisect(fn, -k, k);
  return bisect(fn, k, 2.0 * k);
}

// Root of 2 y^2 (lambda + y/nu) = A2 on bracket 3, 2 or 1:
// [-nu lambda, -2 nu lambda/3], [-2 nu lambda/3, 0], [0, nu lambda/3].
inline double e_root(double a2_value, double lambda, double nu, int branch) {
  auto fn = [&](double y) { return 2.0 * y * y * (lambda + y / nu) - a2_value; };
  if (a2_value == 0.0) return branch == 3 ? -nu * lambda : 0.0;
  if (branch == 3) return bisect(fn, -nu * lambda, -2.0 * nu * lambda / 3.0);
  if (branch == 2) return bisect(fn, -2.0 * nu * lambda / 3.0, 0.0);
  return bisect(fn, 0.0, nu * lambda / 3.0);
}

inline double H(double y, double lambda) {
  const double w = 0.5 * y * y - lambda;
  return 0.5 * w * w;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

// Integral of fn over [a, b] with a composite Gauss-Legendre rule.
inline double gauss(const std::function<double(double)>& fn, double a, double b, int panels = 16,
                    int order = 16) {
  const auto [x, w] = gauss_legendre(order);
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (int i = 0; i < order; ++i) sum += w[i] * fn(lo + 0.5 * width * (x[i] + 1.0));
  }
  return 0.5 * width * sum;
}

// Gradient magnitude of the Cartesian field u by fourth-order central
// differences in every coordinate.
template <std::size_t N, class U>
double grad_norm(const U& u, std::array<double, N> x, double step) {
  double sum = 0.0;
  for (std::size_t d = 0; d < N; ++d) {
    auto at = [&](double shift) {
      auto y = x;
      y[d] += shift;
      return u(y);
    };
    const double g = (-at(2 * step) + 8.0 * at(step) - 8.0 * at(-step) + at(-2 * step)) / (12.0 * step);
    sum += g * g;
  }
  return std::sqrt(sum);
}

// I[u] = int_annulus nu H(|grad u|) - f u for u(x) = upsilon(|x|) in R^2,
// integrated in polar coordinates: Gauss-Legendre in r, trapezoid in angle.
inline double annulus_energy_2d(const std::function<double(double)>& upsilon,
                                const std::function<double(double)>& f, double r2, double r1,
                                double lambda, double nu, int angles = 48) {
  auto u = [&](std::array<double, 2> y) { return upsilon(std::hypot(y[0], y[1])); };
  auto ring = [&](double r) {
    double sum = 0.0;
    for (int k = 0; k < angles; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / angles;
      const std::array<double, 2> x{r * std::cos(phi), r * std::sin(phi)};
      sum += nu * H(grad_norm<2>(u, x, 1e-3), lambda) - f(r) * u(x);
    }
    return r * sum * 2.0 * std::numbers::pi / angles;
  };
  return gauss(ring, r2, r1);
}

// Same in R^3 with spherical coordinates: Gauss-Legendre in r and cos(polar
// angle), trapezoid in azimuth.
inline double annulus_energy_3d(const std::function<double(double)>& upsilon,
                                const std::function<double(double)>& f, double r2, double r1,
                                double lambda, double nu, int polar = 12, int azimuth = 12) {
  auto u = [&](std::array<double, 3> y) { return upsilon(std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])); };
  const auto [cx, cw] = gauss_legendre(polar);
  auto shell = [&](double r) {
    double sum = 0.0;
    for (int i = 0; i < polar; ++i) {
      const double c = cx[i];
      const double s = std::sqrt(1.0 - c * c);
      for (int k = 0; k < azimuth; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / azimuth;
        const std::array<double, 3> x{r * s * std::cos(phi), r * s * std::sin(phi), r * c};
        sum += cw[i] * (nu * H(grad_norm<3>(u, x, 1e-3), lambda) - f(r) * u(x));
      }
    }
    return r * r * sum * 2.0 * std::numbers::pi / azimuth;
  };
  return gauss(shell, r2, r1, 8, 16);
}

}  // namespace oracle
