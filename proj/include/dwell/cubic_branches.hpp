#pragma once

// Branch-resolved roots of the two cubics behind the double-well problem:
//
//   G(z) = z (z^2/2 - lambda)          (stationarity cubic)
//   E(y) = 2 y^2 (lambda + y / nu)     (dual cubic, y >= -nu*lambda)
//
// For |A| < kappa^3 with kappa = sqrt(2 lambda / 3), G(z) = A has exactly one
// root in each of (-2k,-k), (-k,k), (k,2k). Branch identity is carried by the
// angle index of the trigonometric solution, so no bracketing is needed.

#include <algorithm>

namespace dwell {

struct BranchTriple {
  double a_value = 0.0;
  double z1 = 0.0;  // in (-2 kappa, -kappa)
  double z2 = 0.0;  // in (-kappa, kappa)
  double z3 = 0.0;  // in (kappa, 2 kappa)
};

// Roots of E(y) = A2, ordered e3 <= e2 <= e1.
struct EBranchTriple {
  double a2_value = 0.0;
  double e1 = 0.0;  // in [0, nu lambda / 3)
  double e2 = 0.0;  // in [-2 nu lambda / 3, 0]
  double e3 = 0.0;  // in [-nu lambda, -2 nu lambda / 3]
};

struct CorrespondenceResidual {
  double z1_e2 = 0.0;  // |z1 * E2^{-1}(A^2) - A|
  double z2_e3 = 0.0;  // |z2 * E3^{-1}(A^2) - A|
  double z3_e1 = 0.0;  // |z3 * E1^{-1}(A^2) - A|

  double max() const { return std::max({z1_e2, z2_e3, z3_e1}); }
};

double g_cubic(double z, double lambda);
double e_cubic(double y, double lambda, double nu);

// kappa = sqrt(2 lambda / 3), the critical points of G are +-kappa.
double kappa(double lambda);
// kappa^3 = (2 lambda / 3)^{3/2} = |G(+-kappa)|.
double g_critical_value(double lambda);
// 8 lambda^3 nu^2 / 27 = E(-2 nu lambda / 3) = E(nu lambda / 3).
double e_critical_value(double lambda, double nu);

// Residual tolerance for |G(z_i) - A|: 1e-12 max(1, kappa^3), relaxed to 1e-8
// in the near-merge band |A| > 0.99 kappa^3.
double g_residual_tolerance(double a_value, double lambda);

// Throws DomainError unless lambda > 0 and |A| < kappa^3.
BranchTriple solve_g(double a_value, double lambda);

// Middle branch only; same contract as solve_g(A, lambda).z2.
double branch_z2(double a_value, double lambda);

// Throws DomainError unless lambda, nu > 0 and 0 <= A2 < 8 lambda^3 nu^2 / 27.
// At A2 == 0 returns (0, 0, -nu lambda) exactly.
EBranchTriple solve_e(double a2_value, double lambda, double nu);

// Cross-checks the two independent solvers through y z = A. For nu != 1 the
// E roots are taken at A2 = (nu A)^2 and rescaled by 1/nu, since
// E_nu(nu w) = nu^2 E_1(w). Requires 0 < A < kappa^3.
CorrespondenceResidual correspondence_check(double a_value, double lambda, double nu);

}  // namespace dwell
