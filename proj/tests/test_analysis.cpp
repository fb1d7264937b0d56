#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "valence/analysis.hpp"

using namespace valence;

TEST_CASE("arctan fractions match the closed forms") {
  const RatioModel m = RatioModel::from_arctan();
  CHECK(m.valid());
  CHECK(m.fraction_pole == doctest::Approx(0.60817344796939277).epsilon(1e-15));
  CHECK(m.fraction_zero == doctest::Approx(0.78365310406121458).epsilon(1e-15));
  // five-decimal table values bracket them from above
  const RatioModel t;
  CHECK(t.valid());
  CHECK(t.fraction_pole > m.fraction_pole);
  CHECK(t.fraction_zero > m.fraction_zero);
  CHECK(t.numerator_gap == doctest::Approx(1.0 - t.fraction_zero).epsilon(1e-15));
}

TEST_CASE("objective value and maximizer") {
  const RatioModel m;
  CHECK(ratio_objective(m, 2.28228) ==
        doctest::Approx(1.0732932480726971).epsilon(1e-14));
  CHECK_THROWS_AS(ratio_objective(m, 1.0), ValidationError);

  const OptimizeResult o = optimize_C(m);
  CHECK(std::abs(o.c_star - 2.282283209217689) < 1e-6);
  CHECK(o.c_closed_form == doctest::Approx(1.0 + 1.0 / std::sqrt(m.fraction_pole)).epsilon(1e-15));
  CHECK(std::abs(o.c_star - o.c_closed_form) <= 1e-6);
  CHECK(o.value > 1.07329);
  CHECK(o.value > toppila_reference());
  CHECK(toppila_reference() == 80.0 / 79.0);
}

TEST_CASE("finite-cell predictions from exact half-plane counts") {
  const auto fun = ToppilaFunction::build(Params{});
  // k = 5: (N5 + n6*(5.5)) / (n5*(5.5) + n6*(5.5)) with the measured counts
  CHECK(predicted_ratio(fun, 5, Interval::I1) ==
        doctest::Approx(1757.0 / 1598.0).epsilon(1e-15));
  // k = 7 picks up the completed cells 5 and 6
  CHECK(predicted_ratio(fun, 7, Interval::I1) ==
        doctest::Approx(11572.0 / 10743.0).epsilon(1e-15));
  // reciprocal view for even k
  CHECK(predicted_ratio(fun, 6, Interval::I1) ==
        doctest::Approx(1.0828010948905109).epsilon(1e-14));
  // crossing-interval bound degrades when the previous cell is absent or short
  CHECK(predicted_ratio(fun, 5, Interval::I2) ==
        doctest::Approx(0.59955833640044165).epsilon(1e-14));
  CHECK_THROWS_AS(predicted_ratio(fun, 8, Interval::I1), ValidationError);
  CHECK_THROWS_AS(predicted_ratio(fun, 7, Interval::I2), ValidationError);
}

TEST_CASE("asymptotic prediction converges to the objective from above") {
  const RatioModel m;
  const double C = 2.28228;
  const double obj = ratio_objective(m, C);
  double prev = 1e9;
  for (int k = 5; k <= 14; ++k) {
    const double v = predicted_ratio_asymptotic(m, C, 3, k);
    CHECK(v > obj);  // the model lags the whole cell into the numerator
    const double dist = std::abs(v - obj);
    CHECK(dist <= prev);
    prev = dist;
  }
  CHECK(prev < 2e-5);
}

TEST_CASE("interval tags around odd cells") {
  const Params p;
  CHECK(interval_tag(p, 5.0) == "I1");
  CHECK(interval_tag(p, 7.0) == "I1");
  CHECK(interval_tag(p, 5.4) == "I2");
  CHECK(interval_tag(p, 6.0) == "other");
  CHECK(interval_tag(p, 8.6) == "other");
}

TEST_CASE("lag model combines the exact anchor counts") {
  const auto fun = ToppilaFunction::build(Params{});
  double den = 0.0;
  for (const Cell& c : fun.cells())
    den += (double)fun.boundary_roots_in_disk(c.k, 6.0);
  CHECK(lag_model_ratio(fun, 6.0) == doctest::Approx(3940.0 / den).epsilon(1e-15));
  CHECK(lag_model_ratio(fun, 6.0) > 1.0);
  CHECK(lag_model_ratio(fun, 1.0) == 0.0);
}
