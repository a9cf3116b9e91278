#include "doctest.h"

#include "pairspec/spectral_reference.hpp"

#include <cmath>

using namespace pairspec;

namespace {
constexpr double kHalfPiSq = 4.934802200544679;   // pi^2/2
constexpr double kTwoPiSq = 19.739208802178716;   // 2 pi^2
}  // namespace

TEST_CASE("square spectrum lists pi^2(m^2+n^2)/(2d^2) with multiplicity") {
  const auto v = square_neumann_spectrum<double>(1.0, 4);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == doctest::Approx(kHalfPiSq).epsilon(1e-14));
  CHECK(v[2] == doctest::Approx(kHalfPiSq).epsilon(1e-14));
  CHECK(v[3] == doctest::Approx(2.0 * kHalfPiSq).epsilon(1e-14));

  CHECK(square_neumann_spectrum<double>(2.0, 1) == std::vector<double>{0.0});

  const auto a = square_neumann_spectrum<double>(1.0, 12);
  const auto b = square_neumann_spectrum<double>(2.0, 12);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(b[i] == doctest::Approx(a[i] / 4.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)square_neumann_spectrum<double>(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)square_neumann_spectrum<double>(1.0, 0), std::invalid_argument);
}

TEST_CASE("strip threshold is the lowest transverse mode") {
  CHECK(strip_threshold(std::numbers::sqrt2) == doctest::Approx(kHalfPiSq).epsilon(1e-14));
  CHECK(strip_threshold(std::numbers::sqrt2 / 2.0) == doctest::Approx(kTwoPiSq).epsilon(1e-14));
  for (double w : {0.3, 1.0, 2.5})
    CHECK(strip_threshold(2.0 * w) == doctest::Approx(strip_threshold(w) / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)strip_threshold(0.0), std::invalid_argument);
}

TEST_CASE("sector thresholds") {
  CHECK(sector_threshold(SectorLabel::Full, 1.0) == doctest::Approx(kHalfPiSq).epsilon(1e-14));
  CHECK(sector_threshold(SectorLabel::Symmetric, 1.0) ==
        doctest::Approx(kHalfPiSq).epsilon(1e-14));
  CHECK(sector_threshold(SectorLabel::Antisymmetric, 1.0) ==
        doctest::Approx(kTwoPiSq).epsilon(1e-14));
  CHECK(sector_threshold(SectorLabel::Antisymmetric, 2.0) ==
        doctest::Approx(kHalfPiSq).epsilon(1e-14));
  for (double d : {0.5, 1.0, 1.7, 3.0}) {
    CHECK(sector_threshold(SectorLabel::Antisymmetric, d) ==
          doctest::Approx(4.0 * sector_threshold(SectorLabel::Full, d)).epsilon(1e-14));
    CHECK(sector_threshold(SectorLabel::Antisymmetric, d) ==
          doctest::Approx(strip_threshold(std::numbers::sqrt2 * d / 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("threshold catalog") {
  for (double d : {0.5, 1.0, 2.0}) {
    const auto cat = ThresholdCatalog<double>::ideal(d);
    CHECK(cat.pair_full_and_symmetric > 0.0);
    CHECK(cat.pair_antisymmetric ==
          doctest::Approx(4.0 * cat.pair_full_and_symmetric).epsilon(1e-14));
    CHECK(cat.arms_infimum == doctest::Approx(cat.pair_full_and_symmetric).epsilon(1e-14));
    CHECK(ThresholdCatalog<double>::cross(d) ==
          doctest::Approx(cat.pair_full_and_symmetric).epsilon(1e-14));
    CHECK(ThresholdCatalog<double>::cross(d / 2.0) ==
          doctest::Approx(cat.pair_antisymmetric).epsilon(1e-14));
  }
}

TEST_CASE("snapped threshold uses the meshed width") {
  const double w = 23.0 / 32.0;
  CHECK(snapped_threshold(w) ==
        doctest::Approx(pi<double> * pi<double> / (4.0 * w * w)).epsilon(1e-14));
  CHECK(snapped_threshold(1.0 / std::numbers::sqrt2) ==
        doctest::Approx(kHalfPiSq).epsilon(1e-14));
}
