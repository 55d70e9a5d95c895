#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwell/cubic_branches.hpp"
#include "dwell/errors.hpp"
#include "dwell/functional.hpp"
#include "dwell/radial.hpp"
#include "oracles.hpp"

using namespace dwell;
constexpr double kPi = std::numbers::pi;

namespace {

// n = 2 on [1, 2]: f = -(3 - 2r)/r, so r f = 2r - 3 integrates to 0.
RadialProblem example2(double lambda = 1.5, double nu = 1.0) {
  return make_radial_problem(2, 1.0, 2.0, lambda, nu, Profile::polynomial({-3.0, 2.0}, -1));
}

// n = 3 on [1, 2]: f = (2r - 3)/r^2.
RadialProblem example3(double lambda = 1.5, double nu = 1.0) {
  return make_radial_problem(3, 1.0, 2.0, lambda, nu, Profile::polynomial({-3.0, 2.0}, -2));
}

struct SmoothProfile {
  double c, a, w, phi;
  double operator()(double r) const { return c + a * std::sin(w * (r - 1.0) + phi); }
  double derivative(double r) const { return a * w * std::cos(w * (r - 1.0) + phi); }
};

std::vector<SmoothProfile> profiles() {
  std::vector<SmoothProfile> out;
  for (int j = 0; j < 10; ++j) out.push_back({0.3 * j - 1.0, 0.2 + 0.15 * j, 1.0 + 0.5 * j, 0.37 * j});
  return out;
}

GridFunction derivative_on(const SmoothProfile& u, const Grid& g) {
  return GridFunction(g, sample(g, [&](double r) { return u.derivative(r); }));
}

}  // namespace

TEST_CASE("gamma_n") {
  CHECK(gamma_n(1) == 2.0);
  CHECK(gamma_n(2) == 2.0 * kPi);
  CHECK(gamma_n(3) == 4.0 * kPi);
  CHECK(gamma_n(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  for (int n = 1; n <= 12; ++n) {
    CHECK(gamma_n(n) == doctest::Approx(2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gamma_n(0), DomainError);
}

TEST_CASE("make_radial_problem checks its data") {
  const Profile f = Profile::constant(0.0);
  CHECK_THROWS_AS(make_radial_problem(0, 1.0, 2.0, 1.0, 1.0, f), DomainError);
  CHECK_THROWS_AS(make_radial_problem(2, 0.0, 2.0, 1.0, 1.0, f), DomainError);
  CHECK_THROWS_AS(make_radial_problem(2, 2.0, 1.0, 1.0, 1.0, f), DomainError);
  CHECK_THROWS_AS(make_radial_problem(2, 1.0, 2.0, -1.0, 1.0, f), DomainError);
  CHECK_THROWS_AS(make_radial_problem(2, 1.0, 2.0, 1.0, 0.0, f), DomainError);
}

TEST_CASE("radial example validates and has the expected potential") {
  const RadialProblem rp = example2();
  const ValidationReport r = validate_radial(rp);
  CHECK(r.all_ok());
  CHECK(r.l1_norm == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.l1_bound == doctest::Approx(1.0).epsilon(1e-15));
  const GridFunction F = build_radial_potential(rp, 2048);
  CHECK(std::abs(F[1024] - 1.0 / 6.0) < 1e-14);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double x = F.grid().node(i);
    REQUIRE(std::abs(F[i] - (x - 1.0) * (2.0 - x) / x) < 1e-13);
  }
  CHECK(validate_radial(example3()).all_ok());
}

TEST_CASE("shell-weighted potential satisfies (theta F)' = -theta f") {
  for (const RadialProblem& rp : {example2(), example3(1.5, 2.0)}) {
    const GridFunction L = reduced_load(rp, 2048);
    const Grid& g = L.grid();
    const double h = g.spacing();
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < g.size(); ++i) {
      const double dL = (-L[i + 2] + 8.0 * L[i + 1] - 8.0 * L[i - 1] + L[i - 2]) / (12.0 * h);
      const double r = g.node(i);
      worst = std::max(worst, std::abs(dL + std::pow(r, rp.n - 1) * rp.forcing(r)));
    }
    CHECK(worst < 1e-8);
    // Same load from the potential: L = r^(n-1) F.
    const GridFunction F = build_radial_potential(rp, 2048);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(std::abs(L[i] - std::pow(g.node(i), rp.n - 1) * F[i]) < 1e-14);
  }
}

TEST_CASE("radial potential refuses |F| / nu >= kappa^3") {
  const RadialProblem big = make_radial_problem(2, 1.0, 2.0, 0.1, 1.0, Profile::polynomial({-3.0, 2.0}, -1));
  CHECK_THROWS_AS(build_radial_potential(big, 256), DomainError);
  CHECK_NOTHROW(build_radial_potential(example2(), 256));
}

TEST_CASE("I for a constant profile is nu H(0) times the annulus area") {
  const RadialProblem rp = example2();
  const Grid g(1.0, 2.0, 2048);
  const double I = eval_I(rp, GridFunction(g, std::vector<double>(g.size(), 0.0)));
  CHECK(I == doctest::Approx(3.375 * kPi).epsilon(1e-14));
  CHECK(I == doctest::Approx(10.6029).epsilon(1e-5));
  CHECK_THROWS_AS(eval_I(rp, GridFunction(Grid(1.0, 3.0, 16), std::vector<double>(17, 0.0))), GridMismatch);
}

TEST_CASE("n = 2: direct polar quadrature equals gamma_2 K(v) on 10 profiles") {
  const RadialProblem rp = example2();
  const Grid g(1.0, 2.0, 2048);
  for (const SmoothProfile& u : profiles()) {
    const double direct = oracle::annulus_energy_2d(u, rp.forcing, 1.0, 2.0, rp.lambda, rp.nu);
    const double reduced = eval_I(rp, derivative_on(u, g));
    REQUIRE(std::abs(direct - reduced) < 1e-8 * std::abs(direct));
  }
}

TEST_CASE("n = 3: direct spherical quadrature equals gamma_3 K(v)") {
  const RadialProblem rp = example3(1.5, 2.0);
  const Grid g(1.0, 2.0, 2048);
  const auto all = profiles();
  for (std::size_t j = 0; j < all.size(); j += 3) {
    const double direct = oracle::annulus_energy_3d(all[j], rp.forcing, 1.0, 2.0, rp.lambda, rp.nu);
    const double reduced = eval_I(rp, derivative_on(all[j], g));
    REQUIRE(std::abs(direct - reduced) < 1e-8 * std::abs(direct));
  }
}

TEST_CASE("reduced stationary profile is z2(F / nu)") {
  const RadialProblem rp = example2();
  const Problem reduced = reduced_problem(rp);
  const GridFunction v = stationary_point(reduced, reduced_load(rp, 2048));
  CHECK(std::abs(v[1024] - oracle::g_root(1.0 / 6.0, 1.5, 2)) < 1e-12);
  CHECK(v[0] == 0.0);
  CHECK(v[2048] == 0.0);
}

TEST_CASE("both potential conventions give the same candidates") {
  const RadialProblem rp = example2();
  const Candidates a = radial_candidates(rp, 1024, PotentialConvention::shell);
  const Candidates b = radial_candidates(rp, 1024, PotentialConvention::volume);
  for (std::size_t i = 0; i < a.v1.size(); ++i) {
    REQUIRE(std::abs(a.v1[i] - b.v1[i]) < 1e-13);
    REQUIRE(std::abs(a.v2[i] - b.v2[i]) < 1e-13);
    REQUIRE(std::abs(a.v3[i] - b.v3[i]) < 1e-13);
  }
  CHECK(std::abs(a.v1[0] - std::sqrt(3.0)) < 1e-9);
  CHECK(std::abs(a.v2[0] + std::sqrt(3.0)) < 1e-9);
}

TEST_CASE("radial refutation on the example") {
  const RadialRefutation r = radial_refutation(example2());
  CHECK(r.passed);
  CHECK(r.validation.all_ok());
  CHECK(r.sup_probe.passed);
  CHECK(r.lp_probe.passed);
  CHECK(r.convention_gap < 1e-13);
  CHECK(r.assertions.assertions_true == std::vector<std::string>{"maximizer_u3"});
  CHECK(r.assertions.assertions_false == std::vector<std::string>{"minimizer_u1", "minimizer_u2"});
  for (const AssertionCheck& c : r.assertions.checks) {
    if (c.name == "maximizer_u3") {
      CHECK(c.admissible);
      CHECK(c.deviation < 1e-12);
    } else {
      CHECK_FALSE(c.admissible);
      CHECK(std::abs(std::abs(c.endpoint_a) - std::sqrt(3.0)) < 1e-9);
    }
  }
}
