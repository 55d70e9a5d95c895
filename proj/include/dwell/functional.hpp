#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dwell/grid.hpp"
#include "dwell/problem.hpp"

namespace dwell {

// Exponent p in [1, inf] of an L^p norm. Infinity is a separate state, not a
// large float.
class LpExponent {
 public:
  static LpExponent finite(double p);
  static LpExponent infinity() { return LpExponent(0.0, true); }
  // Accepts a number >= 1 or "inf"/"infinity".
  static LpExponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  // Throws std::logic_error for p = inf.
  double value() const;
  std::string str() const;

  friend bool operator==(const LpExponent&, const LpExponent&) = default;

 private:
  LpExponent(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

// Exact quartic expansion of K around v:
//   K(v + h) = K(v) + t1 + t2 + t3 + t4
struct TaylorTerms {
  double k_at_v = 0.0;
  double t1 = 0.0;  // T_v(h)
  double t2 = 0.0;  // int theta (3/2 v^2 - lambda) h^2 / 2
  double t3 = 0.0;  // int theta v h^3 / 2
  double t4 = 0.0;  // int theta h^4 / 8
  double k_at_v_plus_h = 0.0;

  double expansion() const { return k_at_v + t1 + t2 + t3 + t4; }
  double residual() const { return k_at_v_plus_h - expansion(); }
};

// Coefficient functions of the expansion: g2 = theta (3/2 v^2 - lambda) / 2,
// g3 = theta v / 2, g4 = theta / 8.
struct ExpansionCoefficients {
  GridFunction g2;
  GridFunction g3;
  GridFunction g4;
};

// K(v) = int theta H(v) - F v by composite Simpson.
double eval_K(const Problem& problem, const GridFunction& F, const GridFunction& v);

// Pointwise Euler-Lagrange residual theta v (v^2/2 - lambda) - F.
GridFunction gateaux_density(const Problem& problem, const GridFunction& F, const GridFunction& v);

// T_v(h) = int (theta v (v^2/2 - lambda) - F) h.
double eval_gateaux(const Problem& problem, const GridFunction& F, const GridFunction& v,
                    const GridFunction& h);

TaylorTerms taylor_decompose(const Problem& problem, const GridFunction& F, const GridFunction& v,
                             const GridFunction& h);

ExpansionCoefficients expansion_coefficients(const Problem& problem, const GridFunction& v);

// (int |h|^p)^(1/p) by Simpson, or the largest node magnitude for p = inf.
double lp_norm(const GridFunction& h, LpExponent p);

}  // namespace dwell
