#include <doctest.h>

#include <cmath>
#include <random>

#include "dwell/cubic_branches.hpp"
#include "dwell/errors.hpp"
#include "oracles.hpp"

using namespace dwell;

TEST_CASE("solve_g at A = 0 gives -sqrt(3) kappa, 0, sqrt(3) kappa") {
  const BranchTriple t = solve_g(0.0, 1.5);
  CHECK(t.z1 == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
  CHECK(t.z2 == 0.0);
  CHECK(t.z3 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("solve_g matches bisection for A = 0.5, lambda = 1.5") {
  // Frozen from the bisection oracle on z^3/2 - 1.5 z - 0.5.
  const BranchTriple t = solve_g(0.5, 1.5);
  CHECK(std::abs(t.z1 - -1.5320888862379567) < 1e-13);
  CHECK(std::abs(t.z2 - -0.34729635533386066) < 1e-13);
  CHECK(std::abs(t.z3 - 1.879385241571817) < 1e-13);
  CHECK(std::abs(t.z1 - oracle::g_root(0.5, 1.5, 1)) < 1e-13);
  CHECK(std::abs(t.z2 - oracle::g_root(0.5, 1.5, 2)) < 1e-13);
  CHECK(std::abs(t.z3 - oracle::g_root(0.5, 1.5, 3)) < 1e-13);
  CHECK(std::abs(t.z1 + t.z2 + t.z3) < 1e-14);
}

TEST_CASE("solve_g is odd: z_i(-A) = -z_{4-i}(A)") {
  const BranchTriple p = solve_g(0.5, 1.5);
  const BranchTriple m = solve_g(-0.5, 1.5);
  CHECK(std::abs(m.z1 + p.z3) < 1e-12);
  CHECK(std::abs(m.z2 + p.z2) < 1e-12);
  CHECK(std::abs(m.z3 + p.z1) < 1e-12);
}

TEST_CASE("solve_g rejects |A| >= kappa^3 and bad lambda") {
  const double k3 = g_critical_value(1.5);
  CHECK(k3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve_g(k3, 1.5), DomainError);
  CHECK_THROWS_AS(solve_g(-k3, 1.5), DomainError);
  CHECK_THROWS_AS(solve_g(2.0, 1.5), DomainError);
  CHECK_THROWS_AS(solve_g(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(solve_g(std::nan(""), 1.5), DomainError);
  CHECK_THROWS_AS(branch_z2(k3, 1.5), DomainError);
}

TEST_CASE("residual, ordering, brackets and oddness over a 10^3 sweep") {
  std::mt19937_64 rng(7);
  for (double lambda : {0.5, 1.5, 3.0, 10.0}) {
    const double k = kappa(lambda);
    const double k3 = g_critical_value(lambda);
    std::uniform_real_distribution<double> dist(-k3, k3);
    for (int i = 0; i < 1000; ++i) {
      const double a = i == 0 ? 0.0 : dist(rng);
      const BranchTriple t = solve_g(a, lambda);
      const double tol = 1e-12 * std::max(1.0, k3);
      REQUIRE(std::abs(g_cubic(t.z1, lambda) - a) < tol);
      REQUIRE(std::abs(g_cubic(t.z2, lambda) - a) < tol);
      REQUIRE(std::abs(g_cubic(t.z3, lambda) - a) < tol);
      REQUIRE(t.z1 < t.z2);
      REQUIRE(t.z2 < t.z3);
      REQUIRE(t.z1 > -2.0 * k);
      REQUIRE(t.z1 < -k);
      REQUIRE(t.z2 > -k);
      REQUIRE(t.z2 < k);
      REQUIRE(t.z3 > k);
      REQUIRE(t.z3 < 2.0 * k);
      REQUIRE(std::abs(t.z1 + t.z2 + t.z3) < 1e-12 * std::max(1.0, k));
      const BranchTriple m = solve_g(-a, lambda);
      REQUIRE(std::abs(m.z1 + t.z3) < 1e-12);
      REQUIRE(std::abs(m.z2 + t.z2) < 1e-12);
      REQUIRE(std::abs(m.z3 + t.z1) < 1e-12);
      REQUIRE(branch_z2(a, lambda) == t.z2);
    }
  }
}

TEST_CASE("near-merge band keeps the relaxed tolerance") {
  for (double lambda : {0.5, 1.5, 3.0, 10.0}) {
    const double k3 = g_critical_value(lambda);
    for (double frac : {0.99, 0.999, 0.999999, 1.0 - 1e-12}) {
      const double a = frac * k3;
      const BranchTriple t = solve_g(a, lambda);
      CHECK(std::abs(g_cubic(t.z1, lambda) - a) < g_residual_tolerance(a, lambda));
      CHECK(std::abs(g_cubic(t.z2, lambda) - a) < g_residual_tolerance(a, lambda));
      CHECK(std::abs(g_cubic(t.z3, lambda) - a) < g_residual_tolerance(a, lambda));
      CHECK(t.z1 < t.z2);
      CHECK(t.z2 <= t.z3);
    }
  }
}

TEST_CASE("branches are continuous in A away from the merge") {
  const double lambda = 3.0;
  const double k3 = g_critical_value(lambda);
  for (double a : {-0.8 * k3, -0.3 * k3, 0.0, 0.4 * k3, 0.9 * k3}) {
    double prev = 1.0;
    for (double delta : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const BranchTriple t0 = solve_g(a, lambda);
      const BranchTriple t1 = solve_g(a + delta, lambda);
      const double jump = std::max({std::abs(t1.z1 - t0.z1), std::abs(t1.z2 - t0.z2), std::abs(t1.z3 - t0.z3)});
      CHECK(jump < prev);
      CHECK(jump < 10.0 * delta);
      prev = jump;
    }
  }
}

TEST_CASE("solve_e at A2 = 0 factors exactly") {
  const EBranchTriple e = solve_e(0.0, 1.5, 1.0);
  CHECK(e.e1 == 0.0);
  CHECK(e.e2 == 0.0);
  CHECK(e.e3 == -1.5);
  const EBranchTriple e2 = solve_e(0.0, 2.0, 3.0);
  CHECK(e2.e3 == -6.0);
}

TEST_CASE("solve_e matches bisection for A2 = 0.25, lambda = 1.5") {
  // Frozen from the bisection oracle on 2 y^2 (1.5 + y) - 0.25.
  const EBranchTriple e = solve_e(0.25, 1.5, 1.0);
  CHECK(std::abs(e.e3 - -1.4396926207859086) < 1e-13);
  CHECK(std::abs(e.e2 - -0.32635182233306953) < 1e-13);
  CHECK(std::abs(e.e1 - 0.26604444311897796) < 1e-13);
  // The same numbers follow from A / z_j with A = 0.5.
  const BranchTriple t = solve_g(0.5, 1.5);
  CHECK(std::abs(e.e2 - 0.5 / t.z1) < 1e-13);
  CHECK(std::abs(e.e3 - 0.5 / t.z2) < 1e-13);
  CHECK(std::abs(e.e1 - 0.5 / t.z3) < 1e-13);
}

TEST_CASE("solve_e domain") {
  const double top = e_critical_value(1.5, 1.0);
  CHECK(top == doctest::Approx(8.0 * 1.5 * 1.5 * 1.5 / 27.0));
  CHECK_THROWS_AS(solve_e(top, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(solve_e(-1e-3, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(solve_e(0.1, 1.5, 0.0), DomainError);
  CHECK_NOTHROW(solve_e(0.999 * top, 1.5, 1.0));
}

TEST_CASE("solve_e ordering, brackets and residual for general nu") {
  std::mt19937_64 rng(11);
  for (double lambda : {0.5, 1.5, 3.0}) {
    for (double nu : {0.5, 1.0, 2.5}) {
      std::uniform_real_distribution<double> dist(0.0, e_critical_value(lambda, nu));
      for (int i = 0; i < 300; ++i) {
        const double a2 = dist(rng);
        const EBranchTriple e = solve_e(a2, lambda, nu);
        const double scale = std::max(1.0, e_critical_value(lambda, nu));
        REQUIRE(std::abs(e_cubic(e.e1, lambda, nu) - a2) < 1e-11 * scale);
        REQUIRE(std::abs(e_cubic(e.e2, lambda, nu) - a2) < 1e-11 * scale);
        REQUIRE(std::abs(e_cubic(e.e3, lambda, nu) - a2) < 1e-11 * scale);
        REQUIRE(e.e3 <= e.e2);
        REQUIRE(e.e2 <= e.e1);
        REQUIRE(e.e3 >= -nu * lambda);
        REQUIRE(e.e3 <= -2.0 * nu * lambda / 3.0 + 1e-12);
        REQUIRE(e.e2 >= -2.0 * nu * lambda / 3.0 - 1e-12);
        REQUIRE(e.e2 <= 0.0);
        REQUIRE(e.e1 >= 0.0);
        REQUIRE(e.e1 < nu * lambda / 3.0);
        REQUIRE(std::abs(e.e3 - oracle::e_root(a2, lambda, nu, 3)) < 1e-10 * nu * lambda);
        REQUIRE(std::abs(e.e2 - oracle::e_root(a2, lambda, nu, 2)) < 1e-10 * nu * lambda);
        REQUIRE(std::abs(e.e1 - oracle::e_root(a2, lambda, nu, 1)) < 1e-10 * nu * lambda);
      }
    }
  }
}

TEST_CASE("correspondence z1 e2 = z2 e3 = z3 e1 = A") {
  CHECK(correspondence_check(0.5, 1.5, 1.0).max() < 1e-10);
  CHECK(correspondence_check(0.9 * g_critical_value(1.5), 1.5, 1.0).max() < 1e-8);
  CHECK(correspondence_check(0.5, 1.5, 2.0).max() < 1e-10);
  CHECK_THROWS_AS(correspondence_check(0.0, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(correspondence_check(-0.5, 1.5, 1.0), DomainError);
}

TEST_CASE("small A: z2(A)/A and 1/E3^{-1}(A^2) both tend to -1/lambda") {
  const double lambda = 1.5;
  for (double a : {1e-3, 1e-5, 1e-7}) {
    const double ratio = branch_z2(a, lambda) / a;
    const double dual = 1.0 / solve_e(a * a, lambda, 1.0).e3;
    CHECK(std::abs(ratio + 1.0 / lambda) < 10.0 * a);
    CHECK(std::abs(dual + 1.0 / lambda) < 10.0 * a * a);
  }
}
