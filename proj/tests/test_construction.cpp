#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valence/construction.hpp"

using namespace valence;

TEST_CASE("default parameters validate; bad ones throw with detail") {
  CHECK_NOTHROW(validate_params(Params{}));

  Params p;
  p.epsilon = 0.3;
  CHECK_THROWS_AS(validate_params(p), ValidationError);

  p = Params{};
  p.growth_c = 1.0;
  CHECK_THROWS_AS(validate_params(p), ValidationError);

  // delta = 0.02 passes the raw range but breaks the annulus separation margin
  p = Params{};
  p.delta = 0.02;
  CHECK_THROWS_AS(validate_params(p), ValidationError);

  p = Params{};
  p.k_max = 5;
  CHECK_THROWS_AS(validate_params(p), ValidationError);
}

TEST_CASE("cell list matches the closed forms") {
  const auto cells = build_cells(Params{});
  REQUIRE(cells.size() == 4);
  const long N_expected[] = {736, 1680, 3834, 8751};
  const Complex centers[] = {{0.0, 5.0}, {-6.0, 0.0}, {0.0, -7.0}, {8.0, 0.0}};
  for (int i = 0; i < 4; ++i) {
    const Cell& c = cells[i];
    CHECK(c.k == 5 + i);
    CHECK(c.odd == (c.k % 2 == 1));
    CHECK(c.N == N_expected[i]);
    CHECK(std::abs(c.alpha - (c.k % 4) * M_PI / 2.0) < 1e-15);
    CHECK(std::abs(c.center - centers[i]) < 1e-12);
    CHECK(std::abs(c.special - (c.k - 0.5) * c.rot) < 1e-12);
    REQUIRE((long)c.roots.size() == c.N);
    REQUIRE(c.root_abs.size() == c.roots.size());
    REQUIRE(c.root_proj.size() == c.roots.size());
    REQUIRE(c.root_angle.size() == c.roots.size());
    // boundary roots sit exactly on |z - center| = 3/2
    for (int j = 0; j < 8; ++j)
      CHECK(std::abs(std::abs(c.roots[(std::size_t)(j * c.N / 8)] - c.center) - 1.5) < 1e-10);
  }
  CHECK(cells[0].boundary_type() == RootType::Zero);
  CHECK(cells[0].special_type() == RootType::Pole);
  CHECK(cells[1].boundary_type() == RootType::Pole);
  CHECK(cells[1].special_type() == RootType::Zero);
}

TEST_CASE("truncation tail is negligible at the defaults") {
  const double tail = truncation_tail_bound(Params{});
  CHECK(tail > 0.0);
  CHECK(tail < 1e-80);
}

TEST_CASE("root counts in disks") {
  const auto fun = ToppilaFunction::build(Params{});
  CHECK(fun.zeros_in_disk(6.0) == 3940);
  CHECK(fun.poles_in_disk(6.0) == 1865);
  CHECK(fun.zeros_in_disk(7.0) == 5009);
  CHECK(fun.poles_in_disk(7.0) == 9777);
  // all roots captured once every cell is complete
  CHECK(fun.zeros_in_disk(9.8) + fun.poles_in_disk(9.8) ==
        2 * (736 + 1680 + 3834 + 8751));
  CHECK(fun.boundary_roots_in_disk(5, 7.0) == 736);
  CHECK(fun.boundary_roots_in_halfplane(5, 6.5) == 736);
  CHECK(fun.boundary_roots_in_halfplane(5, 5.5) == 577);
  CHECK(fun.boundary_roots_in_halfplane(5, 3.49) == 0);
}

TEST_CASE("evaluation at roots, gaps and the reciprocal view") {
  const auto fun = ToppilaFunction::build(Params{});
  const Cell& c5 = fun.cell(5);

  CHECK(fun.eval(c5.roots[0]).is_zero());
  CHECK(fun.eval(c5.special).is_pole());
  CHECK(fun.eval(fun.cell(6).roots[0]).is_pole());
  CHECK(fun.eval(fun.cell(6).special).is_zero());

  const ToppilaFunction rec = fun.reciprocal();
  CHECK(rec.inverted());
  CHECK(rec.eval(c5.roots[0]).is_pole());
  CHECK(rec.eval(fun.cell(6).special).is_pole());

  // between the cells f is close to 1 and spherically flat
  const FValue g = fun.eval(Complex(2.0, 0.0));
  CHECK(chordal_fvalues(g, FValue{}) < 0.05);
  CHECK(fun.spherical_derivative(Complex(2.0, 0.0)) < 1e-20);

  // the single factor of an even cell keeps the zero view on its boundary
  CHECK(fun.eval_factor(6, fun.cell(6).roots[0]).is_zero());
  CHECK(fun.eval_factor(6, fun.cell(6).special).is_pole());

  CHECK(fun.spherical_derivative(c5.roots[0]) > 0.0);
  CHECK_THROWS_AS(fun.log_derivative(c5.special), NumericalError);
  CHECK_THROWS_AS(fun.eval(Complex(12.0, 0.0)), NumericalError);
}

TEST_CASE("log-polar chordal metric is stable across the dynamic range") {
  CHECK(chordal_fvalues(FValue::zero(), FValue::pole()) == 1.0);
  CHECK(chordal_fvalues(FValue::zero(), FValue::zero()) == 0.0);
  CHECK(chordal_fvalues(FValue{800.0, 0.3}, FValue{800.0, 0.3}) == 0.0);
  CHECK(chordal_fvalues(FValue{800.0, 0.0}, FValue::pole()) < 1e-300);
  // 1 and -1 are chordal distance 1 apart
  CHECK(chordal_fvalues(FValue{0.0, 0.0}, FValue{0.0, M_PI}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(FValue::zero().to_ext() == ExtComplex(0.0, 0.0));
  CHECK(FValue::pole().to_ext().is_inf);
}
