#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "becrad/errors.hpp"
#include "becrad/model.hpp"
#include "becrad/specfun.hpp"
#include "support/oracles.hpp"

using namespace becrad;

namespace {

ModelParams rotating(int dim, double omega, double g, double eps_q, double beta = 1.0) {
  return ModelParams(Variant::RotatingCoupling, dim, beta, omega, g, eps_q);
}

}  // namespace

TEST_CASE("critical chemical potential") {
  CHECK(critical_chemical_potential(rotating(3, 2.0, 1.0, 1.0)) == 0.0);
  CHECK(critical_chemical_potential(rotating(3, 1.0, 2.0, 0.1)) == doctest::Approx(-0.9).epsilon(1e-15));
  CHECK(critical_chemical_potential(ModelParams::perfect_bose_gas(3, 2.0)) == 0.0);
  CHECK(critical_chemical_potential(
            ModelParams(Variant::PairCoupling, 3, 1.0, 1.0, 2.0, 0.1)) ==
        doctest::Approx(-0.9).epsilon(1e-15));
}

TEST_CASE("critical chemical potential is monotone in g and eps_q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double omega = 0.1 + u(rng);
    const double g = u(rng);
    const double eps = u(rng);
    const double dg = 0.01 + 0.1 * u(rng);
    const ModelParams p = rotating(3, omega, g, eps);
    const double mu_c = critical_chemical_potential(p);
    REQUIRE(mu_c <= 0.0);
    CHECK(critical_chemical_potential(p.with_g(g + dg)) <= mu_c);
    CHECK(critical_chemical_potential(p.with_eps_q(eps + dg)) >= mu_c);
    if (g * g > 4.0 * omega * eps) {
      CHECK(mu_c < 0.0);
    } else {
      CHECK(mu_c == 0.0);
      CHECK(critical_density(p) == critical_density(ModelParams::perfect_bose_gas(3, 1.0)));
    }
  }
}

TEST_CASE("critical density") {
  SUBCASE("d = 3 at mu_c = 0 is zeta(3/2) / (4 pi)^(3/2)") {
    const Density rc = critical_density(rotating(3, 2.0, 1.0, 1.0));
    REQUIRE(rc.is_finite());
    const double expected = std::riemann_zeta(1.5) / std::pow(4.0 * std::numbers::pi, 1.5);
    CHECK(rc.value() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(rc.value() == doctest::Approx(5.8644e-2).epsilon(1e-4));
    const double quad = static_cast<double>(oracle::bose_integral(1.0L, 0.0L, 3, 1.0L));
    CHECK(std::abs(rc.value() - quad) <= 1e-10 * quad);
  }
  SUBCASE("d = 1 at mu_c = 0 diverges") {
    CHECK(critical_density(rotating(1, 2.0, 1.0, 1.0)).is_infinite());
    CHECK(critical_density(ModelParams::perfect_bose_gas(2, 1.0)).is_infinite());
  }
  SUBCASE("d = 1 at mu_c = -0.9") {
    // adaptive Simpson oracle in long double, tests/support/oracles.hpp
    const double golden = 0.16470149874420277;
    const Density rc = critical_density(rotating(1, 1.0, 2.0, 0.1));
    REQUIRE(rc.is_finite());
    CHECK(rc.value() == doctest::Approx(golden).epsilon(1e-13));
  }
  SUBCASE("finite whenever mu_c < 0, in every dimension") {
    for (int d = 1; d <= 3; ++d) {
      const Density rc = critical_density(rotating(d, 1.0, 2.0, 0.1));
      CHECK(rc.is_finite());
      CHECK(rc.value() > 0.0);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams(Variant::PerfectBoseGas, 3, 1.0, 1.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(rotating(4, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rotating(0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rotating(3, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rotating(3, 1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rotating(3, 1.0, 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(rotating(3, 1.0, 1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams(Variant::RotatingCoupling, 3, 1.0, 1.0, 1.0, 1.0, 0.0),
                  DomainError);
  CHECK_THROWS_AS(rotating(3, 1.0, std::nan(""), 1.0), DomainError);
}

TEST_CASE("variant names round-trip") {
  for (Variant v : {Variant::PerfectBoseGas, Variant::RotatingCoupling, Variant::PairCoupling}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK(parse_variant("model2") == Variant::PairCoupling);
  CHECK_THROWS_AS(parse_variant("3"), ConfigError);
}

TEST_CASE("density tag") {
  CHECK(Density::infinite().is_infinite());
  CHECK(std::isinf(Density::infinite().to_double()));
  CHECK_THROWS_AS((void)Density::infinite().value(), DomainError);
  CHECK(Density::finite(0.5).value() == 0.5);
  CHECK_THROWS_AS(Density::finite(-1.0), DomainError);
}

TEST_CASE("classification") {
  const ModelParams p = rotating(3, 1.0, 2.0, 0.5);
  const double rc = critical_density(p).value();
  CHECK(classify(p, 0.5 * rc).phase == Phase::Normal);
  CHECK(classify(p, rc).phase == Phase::Normal);
  const Regime above = classify(p, 2.0 * rc);
  CHECK(above.phase == Phase::Condensed);
  CHECK(above.rho_c.is_finite());
  CHECK(above.mu_c == -0.5);
  // rho_c infinite: never condensed
  CHECK(classify(ModelParams::perfect_bose_gas(1, 1.0), 1e6).phase == Phase::Normal);
  CHECK_THROWS_AS(classify(p, 0.0), DomainError);
}

TEST_CASE("effective coupling") {
  CHECK(effective_coupling(2.0, 0.25) == doctest::Approx(1.0));
  CHECK(effective_coupling(0.0, 1.0) == 0.0);
  CHECK(effective_coupling(1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(effective_coupling(-1.0, 1.0), DomainError);
}
