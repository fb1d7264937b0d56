#include "valence/analysis.hpp"

#include <cmath>

namespace valence {

RatioModel RatioModel::from_arctan() {
  RatioModel m;
  m.fraction_zero = 1.0 - std::atan(4.0 * std::sqrt(2.0) / 7.0) / M_PI;
  m.fraction_pole = 1.0 - std::atan(2.0 * std::sqrt(2.0)) / M_PI;
  m.numerator_gap = 1.0 - m.fraction_zero;
  return m;
}

double ratio_objective(const RatioModel& model, double C) {
  if (!model.valid()) throw ValidationError("ratio_objective: invalid model");
  if (!(C > 1.0)) throw ValidationError("ratio_objective: C must exceed 1");
  return 1.0 + model.numerator_gap /
                   (1.0 / (C - 1.0) + model.fraction_zero + model.fraction_pole * C);
}

OptimizeResult optimize_C(const RatioModel& model) {
  if (!model.valid()) throw ValidationError("optimize_C: invalid model");
  double a = 1.0 + 1e-6, b = 100.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = ratio_objective(model, c);
  double fd = ratio_objective(model, d);
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = ratio_objective(model, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = ratio_objective(model, d);
    }
  }
  OptimizeResult res;
  res.c_star = 0.5 * (a + b);
  res.value = ratio_objective(model, res.c_star);
  res.c_closed_form = 1.0 + 1.0 / std::sqrt(model.fraction_pole);
  if (std::abs(res.c_star - res.c_closed_form) > 1e-6)
    throw NumericalError("optimize_C: search and closed form disagree");
  return res;
}

namespace {

// n_j^* with the multiple point excluded (it lies in G_j, outside U_j).
long hp_count(const ToppilaFunction& fun, int j, double r, bool zeros) {
  if (j < 5 || j > fun.params().k_max) return 0;  // absent cell: empty count
  const Cell& c = fun.cell(j);
  const bool boundary_zero =
      (c.boundary_type() == RootType::Zero) != fun.inverted();
  if (boundary_zero != zeros) return 0;
  return fun.boundary_roots_in_halfplane(j, r);
}

}  // namespace

namespace {
double predicted_ratio_impl(const ToppilaFunction& fun, int k, Interval interval);
}

double predicted_ratio(const ToppilaFunction& fun, int k, Interval interval) {
  // even k: identical estimate through the reciprocal view (0 <-> infinity)
  if (k % 2 == 0) return predicted_ratio_impl(fun.reciprocal(), k, interval);
  return predicted_ratio_impl(fun, k, interval);
}

namespace {
double predicted_ratio_impl(const ToppilaFunction& fun, int k, Interval interval) {
  const Params& p = fun.params();
  if (k < 5) throw ValidationError("predicted_ratio: k >= 5 required");
  const int need = (interval == Interval::I1) ? k + 1 : k + 2;
  if (need > p.k_max)
    throw ValidationError("predicted_ratio: cell k=" + std::to_string(need) +
                          " beyond truncation");
  double head = 0.0;  // sum of N_j for complete cells 5..k-2
  for (int j = 5; j <= k - 2; ++j) head += static_cast<double>(fun.cell(j).N);
  const double nk = static_cast<double>(fun.cell(k).N);
  const double half = k + 0.5;
  const double se = std::sqrt(p.epsilon);
  if (interval == Interval::I1) {
    const double pm1 = static_cast<double>(hp_count(fun, k - 1, half, false));
    const double z0 = static_cast<double>(hp_count(fun, k, half, true));
    const double pp1 = static_cast<double>(hp_count(fun, k + 1, half, false));
    const double num = head + pm1 + nk + pp1;
    const double den = head + pm1 + z0 + pp1;
    return num / den;
  }
  // I2: numerator counts at k+1/2 - 3 sqrt(eps), denominator at the outer edge
  const double r_lo = half - 3.0 * se;
  const double r_hi = half + 1.5 * se;
  double nm1 = 0.0;
  if (k - 1 >= 5) nm1 = static_cast<double>(fun.cell(k - 1).N);
  const double num = head + static_cast<double>(hp_count(fun, k - 1, r_lo, false)) +
                     nk + static_cast<double>(hp_count(fun, k + 1, r_lo, false));
  const double den = head + nm1 +
                     static_cast<double>(hp_count(fun, k, r_hi, true)) +
                     static_cast<double>(hp_count(fun, k + 1, r_hi, false)) +
                     static_cast<double>(hp_count(fun, k + 2, r_hi, true));
  return num / den;
}
}  // namespace

double predicted_ratio_asymptotic(const RatioModel& model, double C, int k0, int k) {
  if (!(C > 1.0) || k < 5) throw ValidationError("predicted_ratio_asymptotic: bad input");
  auto N = [&](int j) { return std::floor(std::pow(C, j + k0)); };
  double head = 0.0;
  for (int j = 5; j <= k - 2; ++j) head += N(j);
  const double nm1 = N(k - 1);
  const double num = head + nm1 + N(k) + model.fraction_pole * N(k + 1);
  const double den = head + nm1 + model.fraction_zero * N(k) +
                     model.fraction_pole * N(k + 1);
  return num / den;
}

double lag_model_ratio(const ToppilaFunction& fun, double r) {
  double den = 0.0;
  for (const Cell& c : fun.cells())
    den += static_cast<double>(fun.boundary_roots_in_disk(c.k, r));
  if (den <= 0.0) return 0.0;
  const double num = static_cast<double>(
      std::max(fun.zeros_in_disk(r), fun.poles_in_disk(r)));
  return num / den;
}

std::string interval_tag(const Params& p, double r) {
  const double se = std::sqrt(p.epsilon);
  for (int k = 5; k <= p.k_max; k += 2) {
    const double lo1 = k - 0.5 + 1.5 * se;
    const double hi1 = k + 0.5 - 1.5 * se;
    const double hi2 = k + 0.5 + 1.5 * se;
    if (r >= lo1 && r <= hi1) return "I1";
    if (r > hi1 && r <= hi2) return "I2";
  }
  return "other";
}

std::vector<SweepRow> sweep(const ToppilaFunction& fun, double r_min,
                            double r_max, int steps, std::uint64_t seed,
                            int probe_grid_size, long mc_samples) {
  if (!(r_min > 0.0) || !(r_max >= r_min) || steps < 2)
    throw ValidationError("sweep: need 0 < r_min <= r_max and steps >= 2");
  std::vector<SweepRow> rows;
  for (int i = 0; i < steps; ++i) {
    SweepRow row;
    row.r = r_min + (r_max - r_min) * i / static_cast<double>(steps - 1);
    row.interval = interval_tag(fun.params(), row.r);
    try {
      const MaxValenceResult mv = max_valence(fun, row.r, probe_grid_size);
      row.n_r = mv.n;
      row.attaining = mv.attaining;
      const AreaResult q = area_quadrature(fun, row.r, fun.params().quad_tol);
      row.a_quad = q.value;
      row.a_quad_err = q.error_estimate;
      const AreaResult m =
          area_counting_oracle(fun, row.r, mc_samples, seed + static_cast<std::uint64_t>(i));
      row.a_mc = m.value;
      row.a_mc_err = m.error_estimate;
      row.ratio = (row.a_quad > 1e-9) ? static_cast<double>(row.n_r) / row.a_quad : 0.0;
      row.predicted = lag_model_ratio(fun, row.r);
    } catch (const std::exception& e) {
      row.ok = false;
      row.status = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

double toppila_reference() { return 80.0 / 79.0; }

}  // namespace valence
