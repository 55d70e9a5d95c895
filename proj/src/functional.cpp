#include "dwell/functional.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dwell/errors.hpp"

namespace dwell {

LpExponent LpExponent::finite(double p) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    throw DomainError("L^p exponent must satisfy p >= 1");
  }
  return LpExponent(p, false);
}

LpExponent LpExponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double p = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, p);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse L^p exponent '" + std::string(text) + "'");
  }
  return finite(p);
}

double LpExponent::value() const {
  if (infinite_) throw std::logic_error("LpExponent::value() called on p = inf");
  return p_;
}

std::string LpExponent::str() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

namespace {

void require_common_grid(const GridFunction& F, const GridFunction& v) { require_same_grid(F, v); }

}  // namespace

double eval_K(const Problem& problem, const GridFunction& F, const GridFunction& v) {
  require_common_grid(F, v);
  const auto theta = theta_on(problem, v.grid());
  std::vector<double> integrand(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    integrand[i] = theta[i] * eval_H(v[i], problem.lambda) - F[i] * v[i];
  }
  return simpson(v.grid(), integrand);
}

GridFunction gateaux_density(const Problem& problem, const GridFunction& F, const GridFunction& v) {
  require_common_grid(F, v);
  const auto theta = theta_on(problem, v.grid());
  std::vector<double> density(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    density[i] = theta[i] * v[i] * (0.5 * v[i] * v[i] - problem.lambda) - F[i];
  }
  return GridFunction(v.grid(), std::move(density));
}

double eval_gateaux(const Problem& problem, const GridFunction& F, const GridFunction& v,
                    const GridFunction& h) {
  require_common_grid(v, h);
  const GridFunction density = gateaux_density(problem, F, v);
  std::vector<double> integrand(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) integrand[i] = density[i] * h[i];
  return simpson(h.grid(), integrand);
}

ExpansionCoefficients expansion_coefficients(const Problem& problem, const GridFunction& v) {
  const auto theta = theta_on(problem, v.grid());
  std::vector<double> g2(v.size()), g3(v.size()), g4(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    g2[i] = 0.5 * theta[i] * (1.5 * v[i] * v[i] - problem.lambda);
    g3[i] = 0.5 * theta[i] * v[i];
    g4[i] = 0.125 * theta[i];
  }
  return {GridFunction(v.grid(), std::move(g2)), GridFunction(v.grid(), std::move(g3)),
          GridFunction(v.grid(), std::move(g4))};
}

TaylorTerms taylor_decompose(const Problem& problem, const GridFunction& F, const GridFunction& v,
                             const GridFunction& h) {
  require_common_grid(F, v);
  require_common_grid(v, h);
  const auto c = expansion_coefficients(problem, v);
  const Grid& grid = v.grid();
  std::vector<double> q2(h.size()), q3(h.size()), q4(h.size()), shifted(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double h2 = h[i] * h[i];
    q2[i] = c.g2[i] * h2;
    q3[i] = c.g3[i] * h2 * h[i];
    q4[i] = c.g4[i] * h2 * h2;
    shifted[i] = v[i] + h[i];
  }
  TaylorTerms t;
  t.k_at_v = eval_K(problem, F, v);
  t.t1 = eval_gateaux(problem, F, v, h);
  t.t2 = simpson(grid, q2);
  t.t3 = simpson(grid, q3);
  t.t4 = simpson(grid, q4);
  t.k_at_v_plus_h = eval_K(problem, F, GridFunction(grid, std::move(shifted)));
  return t;
}

double lp_norm(const GridFunction& h, LpExponent p) {
  if (p.is_infinite()) return h.sup_norm();
  const double exponent = p.value();
  std::vector<double> powered(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) powered[i] = std::pow(std::abs(h[i]), exponent);
  return std::pow(simpson(h.grid(), powered), 1.0 / exponent);
}

}  // namespace dwell
