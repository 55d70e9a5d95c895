#include "dwell/problem.hpp"

#include <algorithm>
#include <cmath>

#include "dwell/cubic_branches.hpp"
#include "dwell/errors.hpp"

namespace dwell {
namespace {

constexpr std::size_t kScanIntervals = 16384;

double profile_min(const Profile& profile, double a, double b) {
  if (std::holds_alternative<Profile::Samples>(profile.form())) {
    const auto& s = std::get<Profile::Samples>(profile.form());
    const auto values = profile.sample_on(s.grid);
    return *std::min_element(values.begin(), values.end());
  }
  const auto values = profile.sample_on(Grid(a, b, kScanIntervals));
  return *std::min_element(values.begin(), values.end());
}

// Sign changes of a preset on a dense scan, each refined by bisection.
std::vector<double> preset_sign_changes(const Profile& f, double a, double b, std::size_t scan) {
  std::vector<double> roots;
  const Grid grid(a, b, scan);
  double x_prev = a;
  double f_prev = f(a);
  for (std::size_t i = 1; i <= scan; ++i) {
    const double x = grid.node(i);
    const double fx = f(x);
    if (fx == 0.0) continue;
    if (f_prev != 0.0 && (fx > 0.0) != (f_prev > 0.0)) {
      double lo = x_prev;
      double hi = x;
      const bool lo_positive = f_prev > 0.0;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((f(mid) > 0.0) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

std::size_t strict_sign_changes(std::span<const double> values) {
  std::size_t count = 0;
  int last = 0;
  for (double v : values) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

Problem make_problem(double a, double b, double lambda, Profile theta, Profile forcing) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("problem requires finite endpoints a < b");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("problem requires lambda > 0");
  }
  theta.require_defined_on(a, b);
  forcing.require_defined_on(a, b);
  Problem p;
  p.a = a;
  p.b = b;
  p.lambda = lambda;
  p.mu = profile_min(theta, a, b);
  if (!(p.mu > 0.0)) throw DomainError("weight theta must be strictly positive on [a, b]");
  p.theta = std::move(theta);
  p.forcing = std::move(forcing);
  return p;
}

std::vector<double> theta_on(const Problem& problem, const Grid& grid) {
  return problem.theta.sample_on(grid);
}

int interior_sign(const GridFunction& fn) {
  const auto v = fn.values();
  if (v.size() < 3) return 0;
  const bool positive = std::all_of(v.begin() + 1, v.end() - 1, [](double x) { return x > 0.0; });
  if (positive) return 1;
  const bool negative = std::all_of(v.begin() + 1, v.end() - 1, [](double x) { return x < 0.0; });
  return negative ? -1 : 0;
}

double eval_H(double y, double lambda) {
  const double well = 0.5 * y * y - lambda;
  return 0.5 * well * well;
}

GridFunction build_potential(const Problem& problem, std::size_t intervals) {
  if (intervals < 8 || intervals % 2 != 0) {
    throw DomainError("potential needs an even interval count >= 8");
  }
  const Grid grid(problem.a, problem.b, intervals);
  const auto f = problem.forcing.sample_on(grid);
  for (double v : f) {
    if (!std::isfinite(v)) throw QuadratureError("forcing is non-finite at a node");
  }
  auto values = cumulative_simpson(grid, f);
  for (double& v : values) v = -v;
  return GridFunction(grid, std::move(values));
}

ValidationReport validate_forcing(const Problem& problem, std::size_t intervals) {
  const Grid grid(problem.a, problem.b, intervals);
  const auto f = problem.forcing.sample_on(grid);
  for (double v : f) {
    if (!std::isfinite(v)) throw QuadratureError("forcing is non-finite at a node");
  }
  const auto theta = theta_on(problem, grid);
  const Profile& forcing = problem.forcing;

  ValidationReport r;
  r.analytic = forcing.has_antiderivative();

  double f_sup = 0.0;
  for (double v : f) f_sup = std::max(f_sup, std::abs(v));

  std::vector<double> potential(grid.size());
  if (r.analytic) {
    const double base = *forcing.antiderivative(problem.a);
    r.balance_integral = *forcing.antiderivative(problem.b) - base;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      potential[i] = -(*forcing.antiderivative(grid.node(i)) - base);
    }
    potential.front() = 0.0;
    std::vector<double> breaks{problem.a};
    const auto roots =
        preset_sign_changes(forcing, problem.a, problem.b, std::max<std::size_t>(4 * intervals, 8192));
    breaks.insert(breaks.end(), roots.begin(), roots.end());
    breaks.push_back(problem.b);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      r.l1_norm += std::abs(*forcing.antiderivative(breaks[k + 1]) - *forcing.antiderivative(breaks[k]));
    }
    r.forcing_zero_crossings = roots.size();
  } else {
    r.balance_integral = simpson(grid, f);
    const auto running = cumulative_simpson(grid, f);
    for (std::size_t i = 0; i < grid.size(); ++i) potential[i] = -running[i];
    std::vector<double> magnitude(f.size());
    std::transform(f.begin(), f.end(), magnitude.begin(), [](double v) { return std::abs(v); });
    r.l1_norm = simpson(grid, magnitude);
    r.forcing_zero_crossings = strict_sign_changes(f);
  }

  r.balance_tolerance = 1e-10 * (problem.b - problem.a) * f_sup;
  r.balance_ok = std::abs(r.balance_integral) <= r.balance_tolerance;

  const GridFunction F(grid, potential);
  r.potential_sign = interior_sign(F);
  r.sign_ok = r.potential_sign != 0;

  const double k3 = g_critical_value(problem.lambda);
  r.l1_bound = problem.mu * k3;
  r.l1_ok = r.l1_norm < r.l1_bound;

  r.finf_bound = k3;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.potential_sup = std::max(r.potential_sup, std::abs(potential[i]));
    r.scaled_potential_sup = std::max(r.scaled_potential_sup, std::abs(potential[i] / theta[i]));
  }
  r.finf_ok = r.scaled_potential_sup < k3;
  return r;
}

}  // namespace dwell
