#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valence/area.hpp"

using namespace valence;

TEST_CASE("spherical area vanishes where the map is flat") {
  const auto fun = ToppilaFunction::build(Params{});
  const AreaResult q = area_quadrature(fun, 3.0, 5.0);
  CHECK(q.method == "quadrature");
  CHECK(q.value >= 0.0);
  CHECK(q.value < 1e-8);
  CHECK(q.work_units > 0);
}

TEST_CASE("quadrature agrees with the counting oracle mid-band") {
  const auto fun = ToppilaFunction::build(Params{});
  const AreaResult q = area_quadrature(fun, 6.0, 5.0);
  CHECK(std::abs(q.value - 3388.9) < 5.0);
  CHECK(q.error_estimate < 5.0);

  const AreaResult m = area_counting_oracle(fun, 6.0, 100, 12345);
  CHECK(m.method == "counting");
  CHECK(m.skipped == 0);
  CHECK(std::abs(m.value - q.value) < m.error_estimate + q.error_estimate + 1.0);

  // same seed, same estimate
  const AreaResult m2 = area_counting_oracle(fun, 6.0, 100, 12345);
  CHECK(m2.value == m.value);
  CHECK(m2.error_estimate == m.error_estimate);
}

TEST_CASE("complete cells contribute exactly N per target") {
  const auto fun = ToppilaFunction::build(Params{});
  const AreaResult whole = cell_area(fun, 5, 7.0, RegionY::Sphere, 100, 99);
  CHECK(whole.value == doctest::Approx(736.0).epsilon(1e-12));
  CHECK(whole.error_estimate == 0.0);

  const AreaResult masked = cell_area(fun, 5, 7.0, RegionY::X, 100, 99);
  CHECK(masked.value == doctest::Approx(736.0 * 0.97).epsilon(1e-12));
  CHECK(masked.error_estimate == 0.0);
}
