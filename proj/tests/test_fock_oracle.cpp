#include <doctest.h>

#include <cmath>

#include "becrad/errors.hpp"
#include "becrad/fock_oracle.hpp"
#include "support/oracles.hpp"

using namespace becrad;

TEST_CASE("decoupled mode is a Bose-Einstein occupation") {
  for (Variant v : {Variant::RotatingCoupling, Variant::PairCoupling}) {
    const ThermalMoments m = converged_thermal_expectations(v, 0.7, 1.3, 0.0, 1.0);
    CHECK(m.n_matter == doctest::Approx(1.0 / std::expm1(0.7)).epsilon(1e-9));
    CHECK(m.n_photon == doctest::Approx(1.0 / std::expm1(1.3)).epsilon(1e-9));
    CHECK(m.correlation == 0.0);
  }
}

TEST_CASE("rotating block against an independent eigendecomposition") {
  const ThermalMoments m = converged_thermal_expectations(Variant::RotatingCoupling, 1.5, 2.0, 1.0, 1.0);
  const oracle::BlockMoments ref = oracle::rotating_block(1.5L, 2.0L, 1.0L, 1.0L);
  CHECK(m.n_matter == doctest::Approx(static_cast<double>(ref.matter)).epsilon(1e-8));
  CHECK(m.n_photon == doctest::Approx(static_cast<double>(ref.photon)).epsilon(1e-8));
  CHECK(m.correlation == doctest::Approx(static_cast<double>(ref.correlation)).epsilon(1e-8));
  // number conservation: the block label matches the summed occupations
  CHECK(m.conserved == doctest::Approx(m.n_matter + m.n_photon).epsilon(1e-12));
}

TEST_CASE("pair block labels count the occupation difference") {
  const ThermalMoments m = thermal_expectations(Variant::PairCoupling, 1.0, 1.4, 1.2, 1.0, 64);
  CHECK(m.conserved == doctest::Approx(m.n_photon - m.n_matter).epsilon(1e-10));
}

TEST_CASE("large gaps converge at small cutoffs") {
  // beta * E_min >= 1: converged by n_max = 32
  for (Variant v : {Variant::RotatingCoupling, Variant::PairCoupling}) {
    const ThermalMoments m = converged_thermal_expectations(v, 2.0, 2.5, 1.0, 1.0);
    CHECK(m.n_max <= 32);
  }
}

TEST_CASE("coupling sign flips only the correlation") {
  for (Variant v : {Variant::RotatingCoupling, Variant::PairCoupling}) {
    const ThermalMoments up = thermal_expectations(v, 1.0, 1.5, 0.8, 1.0, 48);
    const ThermalMoments down = thermal_expectations(v, 1.0, 1.5, -0.8, 1.0, 48);
    CHECK(up.n_matter == doctest::Approx(down.n_matter).epsilon(1e-12));
    CHECK(up.n_photon == doctest::Approx(down.n_photon).epsilon(1e-12));
    CHECK(up.correlation == doctest::Approx(-down.correlation).epsilon(1e-12));
  }
}

TEST_CASE("partition function grows with the cutoff") {
  double prev = -std::numeric_limits<double>::infinity();
  for (int n_max : {4, 8, 16, 32, 64}) {
    const ThermalMoments m = thermal_expectations(Variant::RotatingCoupling, 0.4, 0.9, 0.5, 1.0, n_max);
    CHECK(m.log_partition > prev);
    prev = m.log_partition;
  }
}

TEST_CASE("oracle error paths") {
  CHECK_THROWS_AS(thermal_expectations(Variant::PairCoupling, 1.0, 1.0, 2.5, 1.0, 8), InstabilityError);
  CHECK_THROWS_AS(thermal_expectations(Variant::RotatingCoupling, 1.0, 1.0, 2.0, 1.0, 8), InstabilityError);
  CHECK_THROWS_AS(thermal_expectations(Variant::RotatingCoupling, 1.0, 1.0, 0.5, 1.0, 1000), DomainError);
  CHECK_THROWS_AS(thermal_expectations(Variant::RotatingCoupling, 1.0, 1.0, 0.5, 1.0, 0), DomainError);
  CHECK_THROWS_AS(thermal_expectations(Variant::PerfectBoseGas, 1.0, 1.0, 0.0, 1.0, 8), DomainError);
  // near the stability edge the occupations need more levels than the cap allows
  CHECK_THROWS_AS(converged_thermal_expectations(Variant::RotatingCoupling, 0.01, 1.0, 0.19, 1.0),
                  ConvergenceError);
  CHECK_THROWS_AS(converged_thermal_expectations(Variant::PairCoupling, 1.0, 1.0, 1.999, 1.0),
                  ConvergenceError);
}
