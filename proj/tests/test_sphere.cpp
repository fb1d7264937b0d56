#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valence/sphere.hpp"

using namespace valence;

TEST_CASE("chordal distance basics") {
  const ExtComplex zero(0.0, 0.0);
  const ExtComplex one(1.0, 0.0);
  const ExtComplex inf = ExtComplex::infinity();

  CHECK(chordal_distance(zero, zero) == 0.0);
  CHECK(chordal_distance(inf, inf) == 0.0);
  CHECK(chordal_distance(zero, inf) == 1.0);
  CHECK(chordal_distance(zero, one) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(chordal_distance(inf, one) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(chordal_distance(one, ExtComplex(-1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("chordal distance symmetry and inversion invariance") {
  const ExtComplex a(0.7, -1.3), b(-2.0, 0.4);
  CHECK(chordal_distance(a, b) == chordal_distance(b, a));

  const Complex ia = 1.0 / a.v, ib = 1.0 / b.v;
  CHECK(chordal_distance(ExtComplex(ia), ExtComplex(ib)) ==
        doctest::Approx(chordal_distance(a, b)).epsilon(1e-14));
}

TEST_CASE("chordal disk area is radius squared") {
  CHECK(chordal_disk_area(0.3) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(chordal_disk_area(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  ChordalDisk d{ExtComplex(0.0, 1.0), 0.5};
  CHECK(d.contains(ExtComplex(0.0, 1.2)));
  CHECK(!d.contains(ExtComplex::infinity()));
}

TEST_CASE("region X excludes the three marked caps") {
  const double eps = 0.01;  // chordal cap radius sqrt(eps) = 0.1
  CHECK(RegionX{eps}.measure() == doctest::Approx(0.97));
  CHECK(in_region_X(ExtComplex(2.0, 2.0), eps));
  CHECK(in_region_X(ExtComplex(0.0, 1.0), eps));
  CHECK(!in_region_X(ExtComplex(1.001, 0.0), eps));
  CHECK(!in_region_X(ExtComplex(0.01, 0.0), eps));
  CHECK(!in_region_X(ExtComplex(1e6, 0.0), eps));  // near infinity
  CHECK(!in_region_X(ExtComplex::infinity(), eps));
}

TEST_CASE("uniform sphere sampling is deterministic and uniform") {
  const std::size_t n = 20000;
  const auto s1 = uniform_sphere_sample(n, 42);
  const auto s2 = uniform_sphere_sample(n, 42);
  const auto s3 = uniform_sphere_sample(n, 43);
  REQUIRE(s1.size() == n);
  CHECK(s1[0] == s2[0]);
  CHECK(s1[n - 1] == s2[n - 1]);
  CHECK(!(s1[0] == s3[0]));

  // spherical cap of chordal radius 0.5 has normalized measure 0.25
  std::size_t in_cap = 0, in_x = 0;
  const ExtComplex c(0.0, 1.0);
  for (const ExtComplex& a : s1) {
    if (chordal_distance(a, c) < 0.5) ++in_cap;
    if (in_region_X(a, 0.01)) ++in_x;
  }
  CHECK(std::abs(in_cap / (double)n - 0.25) < 0.03);
  CHECK(std::abs(in_x / (double)n - 0.97) < 0.02);
}

TEST_CASE("incremental sampler reproduces the batch stream") {
  SphereSampler gen(7);
  const auto batch = uniform_sphere_sample(100, 7);
  for (const ExtComplex& a : batch) CHECK(gen.next() == a);
}
