#include <doctest.h>

#include <cmath>

#include "becrad/errors.hpp"
#include "becrad/lattice.hpp"
#include "becrad/specfun.hpp"
#include "support/oracles.hpp"

using namespace becrad;

namespace {

long multiplicity(const ModeShells& m, long norm2) {
  for (const Shell& s : m.shells) {
    if (s.norm2 == norm2) return s.multiplicity;
  }
  return 0;
}

}  // namespace

TEST_CASE("shell examples") {
  const double two_pi = 2.0 * std::numbers::pi;
  SUBCASE("d = 1, |n| <= 2") {
    const ModeShells m = enumerate_shells(VolumeSpec{1.0, 1, 2.0 * two_pi});
    REQUIRE(m.shells.size() == 2);
    CHECK(m.shells[0].norm2 == 1);
    CHECK(m.shells[0].multiplicity == 2);
    CHECK(m.shells[1].norm2 == 4);
    CHECK(m.shells[1].multiplicity == 2);
    CHECK(m.mode_count() == 4);
  }
  CHECK(multiplicity(enumerate_shells(3, 1), 1) == 6);
  CHECK(multiplicity(enumerate_shells(2, 5), 5) == 8);
  CHECK(multiplicity(enumerate_shells(3, 7), 7) == 0);
  CHECK_THROWS_AS(enumerate_shells(VolumeSpec{1.0, 3, std::nullopt}), DomainError);
  CHECK_THROWS_AS(enumerate_shells(VolumeSpec{1.0, 3, 0.5}), DomainError);
}

TEST_CASE("shell multiplicities match brute-force point counting") {
  for (int d = 1; d <= 3; ++d) {
    const auto brute = oracle::lattice_histogram(d, 100);
    for (long cutoff : {1L, 2L, 13L, 50L, 100L}) {
      const ModeShells m = enumerate_shells(d, cutoff);
      long points = 0;
      for (const auto& [norm2, count] : brute) {
        if (norm2 <= cutoff) points += count;
      }
      CHECK(m.mode_count() + 1 == points);
      for (const Shell& s : m.shells) {
        CAPTURE(d);
        CAPTURE(s.norm2);
        CHECK(s.multiplicity == brute.at(s.norm2));
      }
    }
  }
}

TEST_CASE("volume validation") {
  CHECK_THROWS_AS(VolumeSpec({0.0, 3, std::nullopt}).validate(), DomainError);
  CHECK_THROWS_AS(VolumeSpec({4.0, 0, std::nullopt}).validate(), DomainError);
  CHECK(VolumeSpec{4.0, 2, std::nullopt}.volume() == 16.0);
  const ModelParams p = ModelParams::perfect_bose_gas(2, 1.0);
  CHECK_THROWS_AS(FreeModes(VolumeSpec{4.0, 3, std::nullopt}, p), DomainError);
}

TEST_CASE("free mode density golden values") {
  SUBCASE("d = 1, L = 10, mu = -1") {
    // direct summation over n != 0 in long double
    const double golden = 0.084596191877716452;
    const ModelParams p = ModelParams::perfect_bose_gas(1, 1.0);
    CHECK(free_mode_density(VolumeSpec{10.0, 1, std::nullopt}, -1.0, p) ==
          doctest::Approx(golden).epsilon(1e-14));
  }
  SUBCASE("coupled mode removed from the nearest shell") {
    const ModelParams p(Variant::RotatingCoupling, 3, 1.0, 1.0, 2.0, 0.5);
    const VolumeSpec vol{32.0, 3, std::nullopt};
    const FreeModes free(vol, p);
    REQUIRE(free.coupled_slot().has_value());
    CHECK(*free.coupled_slot() == 13);
    const double expected = static_cast<double>(oracle::lattice_density(32, 3, 1, -0.6, 1, 13));
    CHECK(free.density(-0.6) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("zero coupling at eps_q = 0 reproduces the free gas") {
  const ModelParams pbg = ModelParams::perfect_bose_gas(3, 1.0);
  const ModelParams decoupled(Variant::RotatingCoupling, 3, 1.0, 1.0, 0.0, 0.0);
  const VolumeSpec vol{12.0, 3, std::nullopt};
  const FreeModes a(vol, pbg);
  const FreeModes b(vol, decoupled);
  CHECK(b.coupled_slot() == std::optional<long>(0));
  for (double mu : {-2.0, -0.3, -0.01, 0.0}) {
    CHECK(a.density(mu) == b.density(mu));
  }
  const double expected = static_cast<double>(oracle::lattice_density(12, 3, 1, -0.3L, 1));
  CHECK(a.density(-0.3) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("free mode density approaches the Bose integral") {
  const ModelParams p = ModelParams::perfect_bose_gas(3, 1.0);
  const double limit = bose_density(1.0, -1.0, 3).value.value();
  double prev = std::numeric_limits<double>::infinity();
  for (double box : {8.0, 16.0, 32.0, 64.0}) {
    const double err = std::abs(free_mode_density(VolumeSpec{box, 3, std::nullopt}, -1.0, p) - limit);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3 * limit);
}

TEST_CASE("free mode density is increasing and diverges at the lowest mode") {
  const ModelParams p = ModelParams::perfect_bose_gas(2, 1.0);
  const VolumeSpec vol{10.0, 2, std::nullopt};
  const FreeModes free(vol, p);
  double prev = 0.0;
  for (double mu = -3.0; mu < free.lowest_energy(); mu += 0.01) {
    const double v = free.density(mu);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(free.density(free.lowest_energy()), DivergenceError);
}

TEST_CASE("auto cutoff leaves a negligible tail") {
  const ModelParams p = ModelParams::perfect_bose_gas(3, 0.5);
  const VolumeSpec vol{20.0, 3, std::nullopt};
  const FreeModes free(vol, p);
  const double with_more = static_cast<double>(oracle::lattice_density(20, 3, 0.5L, -0.2L, 1, 0, 120.0L));
  CHECK(std::abs(free.density(-0.2) - with_more) <= 1e-14 * with_more);
}
