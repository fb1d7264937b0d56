#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valence/moebius.hpp"

using namespace valence;

namespace {
double cd(const ExtComplex& a, const ExtComplex& b) { return chordal_distance(a, b); }
}

TEST_CASE("central map fixed values") {
  const MoebiusMap T = map_T();
  CHECK(T.valid());
  CHECK(cd(apply(T, ExtComplex(0.0, 0.0)), ExtComplex(1.0 / 3.0, 0.0)) < 1e-15);
  CHECK(cd(apply(T, ExtComplex(-1.0 / 3.0, 0.0)), ExtComplex(0.0, 0.0)) < 1e-15);
  CHECK(apply(T, ExtComplex(-3.0, 0.0)).is_inf);
  CHECK(cd(apply(T, ExtComplex::infinity()), ExtComplex(3.0, 0.0)) < 1e-15);
  CHECK(cd(apply(T, ExtComplex(1.0, 0.0)), ExtComplex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("central map preserves the unit circle") {
  const MoebiusMap T = map_T();
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * M_PI * i / 64.0;
    const ExtComplex w = apply(T, ExtComplex(std::polar(1.0, t)));
    REQUIRE(w.finite());
    CHECK(std::abs(std::abs(w.v) - 1.0) < 1e-14);
  }
  const GeneralizedCircle img =
      image_of_circle(T, GeneralizedCircle::circle({0.0, 0.0}, 1.0));
  CHECK(!img.is_line);
  CHECK(std::abs(img.center) < 1e-14);
  CHECK(img.radius == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("circle through the pole maps to a line") {
  const GeneralizedCircle img = image_of_circle(
      map_T(), GeneralizedCircle::circle({-3.0, 1.0}, 1.0));
  CHECK(img.is_line);
  // points of the source circle (other than -3) land on the line
  const ExtComplex w = apply(map_T(), ExtComplex(Complex(-3.0, 2.0)));
  REQUIRE(w.finite());
  CHECK(std::abs((w.v * std::conj(img.normal)).real() - img.offset) < 1e-12);
}

TEST_CASE("inverse and composition") {
  const MoebiusMap T = map_T();
  const MoebiusMap Tinv = inverse(T);
  const MoebiusMap id = compose(Tinv, T);
  for (const Complex z : {Complex(0.3, 0.7), Complex(-2.0, 1.0), Complex(5.0, -4.0)}) {
    CHECK(cd(apply(id, ExtComplex(z)), ExtComplex(z)) < 1e-14);
    CHECK(cd(apply(Tinv, apply(T, ExtComplex(z))), ExtComplex(z)) < 1e-14);
  }
  CHECK(cd(apply(Tinv, ExtComplex(0.0, 0.0)), ExtComplex(-1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("cell map normalizes its disk") {
  const double alpha = M_PI / 2.0;
  const MoebiusMap L = cell_map(5, alpha);
  const Complex center(0.0, 5.0);
  CHECK(cd(apply(L, ExtComplex(center)), ExtComplex(0.0, 0.0)) < 1e-14);
  for (int i = 0; i < 16; ++i) {
    const double t = 2.0 * M_PI * i / 16.0;
    const ExtComplex w = apply(L, ExtComplex(center + 1.5 * std::polar(1.0, t)));
    REQUIRE(w.finite());
    CHECK(std::abs(std::abs(w.v) - 1.0) < 1e-13);
  }
}

TEST_CASE("half-plane edge abscissa matches the cell map") {
  for (int j : {5, 6, 7, 8}) {
    const double alpha = (j % 4) * M_PI / 2.0;
    for (int k : {5, 6, 7}) {
      const Complex on_line = (k + 0.5) * std::polar(1.0, alpha);
      const ExtComplex w = apply(cell_map(j, alpha), ExtComplex(on_line));
      REQUIRE(w.finite());
      CHECK(line_image_abscissa(k, j) == doctest::Approx(w.v.real()).epsilon(1e-13));
    }
  }
}

TEST_CASE("boundary angle of T is decreasing from pi to 0") {
  CHECK(boundary_arg_T(-1.0) == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(boundary_arg_T(1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(boundary_arg_T(0.0) == doctest::Approx(std::atan(4.0 / 3.0)).epsilon(1e-14));
  double prev = boundary_arg_T(-1.0);
  for (int i = 1; i <= 200; ++i) {
    const double x = -1.0 + 2.0 * i / 200.0;
    const double cur = boundary_arg_T(x);
    CHECK(cur < prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("generalized circle parameterization stays on the locus") {
  const GeneralizedCircle c = GeneralizedCircle::circle({2.0, -1.0}, 0.5);
  CHECK(std::abs(std::abs(c.point_at(1.2) - Complex(2.0, -1.0)) - 0.5) < 1e-14);
  const GeneralizedCircle l = GeneralizedCircle::line(std::polar(1.0, 0.3), 2.0);
  CHECK(std::abs((l.point_at(-3.0) * std::conj(l.normal)).real() - 2.0) < 1e-12);
}
