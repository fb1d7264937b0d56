#ifndef VALENCE_ANALYSIS_HPP
#define VALENCE_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "valence/area.hpp"
#include "valence/construction.hpp"
#include "valence/winding.hpp"

namespace valence {

// Constants stored exactly as rounded to five decimals (the numerator gap
// absorbs the fifth-decimal adjustment of the zero fraction); a recomputed
// arctan model is available for comparison.
struct RatioModel {
  double fraction_zero = 0.78367;
  double fraction_pole = 0.60818;
  double numerator_gap = 0.21633;

  static RatioModel from_arctan();
  bool valid() const {
    return 0.0 < fraction_pole && fraction_pole < fraction_zero &&
           fraction_zero < 1.0;
  }
};

// 1 + gap / (1/(C-1) + fraction_zero + fraction_pole * C)
double ratio_objective(const RatioModel& model, double C);

struct OptimizeResult {
  double c_star = 0.0;       // golden-section maximizer
  double value = 0.0;        // objective at c_star
  double c_closed_form = 0.0;  // 1 + fraction_pole^{-1/2}
};
OptimizeResult optimize_C(const RatioModel& model);

enum class Interval { I1, I2 };

// Finite-k prediction from exact half-plane enumeration counts (no asymptotic
// fractions, epsilon/eta correction terms dropped).  Even k is handled through
// the reciprocal view.  Throws when a needed cell exceeds k_max.
double predicted_ratio(const ToppilaFunction& fun, int k, Interval interval);

// Same shape with the asymptotic fraction bounds and N_j = floor(C^{j+k0});
// pure arithmetic, no cells needed.  Used for the k -> infinity trend.
double predicted_ratio_asymptotic(const RatioModel& model, double C, int k0, int k);

// Radius-resolved prediction for a sweep row: exact max(n(r,0), n(r,inf))
// over the exact per-cell anchor counts (boundary roots inside the disk).
double lag_model_ratio(const ToppilaFunction& fun, double r);

struct SweepRow {
  double r = 0.0;
  std::string interval;  // "I1", "I2", "other"
  long n_r = 0;
  ExtComplex attaining;
  double a_quad = 0.0, a_quad_err = 0.0;
  double a_mc = 0.0, a_mc_err = 0.0;
  double ratio = 0.0;      // n_r / a_quad (0 when a_quad is ~0)
  double predicted = 0.0;  // lag_model_ratio
  bool ok = true;
  std::string status;  // failure description when !ok
};

std::string interval_tag(const Params& p, double r);

std::vector<SweepRow> sweep(const ToppilaFunction& fun, double r_min,
                            double r_max, int steps, std::uint64_t seed,
                            int probe_grid_size, long mc_samples);

double toppila_reference();

}  // namespace valence

#endif
