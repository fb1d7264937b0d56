#ifndef VALENCE_CONSTRUCTION_HPP
#define VALENCE_CONSTRUCTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "valence/errors.hpp"
#include "valence/moebius.hpp"
#include "valence/sphere.hpp"

namespace valence {

enum class AlphaRule { Mod4QuarterTurns };

struct Params {
  double epsilon = 0.01;
  double delta = 0.01;
  double growth_c = 2.28228;
  int k0 = 3;
  int k_max = 8;
  double quad_tol = 5.0;
  double winding_tol = 1e-9;
  AlphaRule alpha_rule = AlphaRule::Mod4QuarterTurns;
};

// Throws ValidationError listing every violated constraint with both sides.
void validate_params(const Params& p);

// 2 * sum over truncated cells of (1+delta)^(-N_k); bounds |log f - log f_K|
// away from the kept cells.
double truncation_tail_bound(const Params& p);

enum class RootType { Zero, Pole, Special };

struct Cell {
  int k = 0;
  bool odd = false;            // odd cells: numerator factor (zeros on boundary)
  double alpha = 0.0;
  long N = 0;
  Complex rot;                 // e^{i alpha}
  Complex center;              // k e^{i alpha}
  Complex special;             // (k - 1/2) e^{i alpha}
  std::vector<Complex> roots;  // N simple boundary roots, j = 0..N-1

  // Derived lookup tables (all sorted ascending).
  std::vector<double> root_abs;    // |root|
  std::vector<double> root_proj;   // Re(root * e^{-i alpha})
  std::vector<std::pair<double, int>> root_angle;  // arg(root - center) -> index

  GeneralizedCircle outer;  // C_a: preimage of S(0, 1+delta) under T o L_k
  GeneralizedCircle inner;  // C_b: preimage of S(0, 1-delta)

  // Boundary-root type as seen in f (not in the single factor).
  RootType boundary_type() const { return odd ? RootType::Zero : RootType::Pole; }
  RootType special_type() const { return odd ? RootType::Pole : RootType::Zero; }
};

// Value of f in log-polar form: f = exp(log_mag + i*arg).  Exact zeros and
// poles use infinite log_mag.
struct FValue {
  double log_mag = 0.0;
  double arg = 0.0;

  bool is_zero() const;
  bool is_pole() const;
  static FValue zero();
  static FValue pole();
  ExtComplex to_ext() const;
};

// Chordal distance between two log-polar values, stable across the huge
// dynamic range (reciprocal trick when both magnitudes exceed 1).
double chordal_fvalues(const FValue& a, const FValue& b);

class ToppilaFunction {
 public:
  static ToppilaFunction build(const Params& p);

  const Params& params() const { return params_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int k) const;  // by index k (5..k_max)
  bool inverted() const { return invert_; }

  // View of 1/f: same cells, zero/pole roles swapped.
  ToppilaFunction reciprocal() const;

  double certified_radius() const { return params_.k_max + 3.0; }

  // Full evaluation (all cells), log space.  Throws NumericalError outside the
  // certified radius.
  FValue eval(const Complex& z) const;
  ExtComplex eval_ext(const Complex& z) const;

  // Single factor S_k (or its reciprocal view) and f with one cell skipped.
  FValue eval_factor(int k, const Complex& z) const;
  FValue eval_excluding(int k, const Complex& z) const;

  // f'/f.  Throws NumericalError at zeros/poles.
  Complex log_derivative(const Complex& z) const;

  // f# = |f'| / (1 + |f|^2), finite everywhere (limit value at roots).
  double spherical_derivative(const Complex& z) const;
  // Same for the single factor S_k.
  double factor_spherical_derivative(int k, const Complex& z) const;

  // Exact a-point counts from the closed-form lists, |z| <= r.
  long zeros_in_disk(double r) const;
  long poles_in_disk(double r) const;
  // Boundary roots of one cell with |z| <= r.
  long boundary_roots_in_disk(int k, double r) const;
  // Boundary roots of one cell with Re(z e^{-i alpha_k}) <= x.
  long boundary_roots_in_halfplane(int k, double x) const;

  // Callable views for the winding engine.
  std::function<FValue(const Complex&)> map() const;
  std::function<FValue(const Complex&)> factor_map(int k) const;

 private:
  Params params_;
  std::vector<Cell> cells_;
  bool invert_ = false;

  struct CellEval;
  FValue eval_mask(const Complex& z, int only_k, int skip_k) const;
  // -1: none.  Returns cell index and root index (-2 = special) if z snaps.
  bool snap(const Complex& z, int& cell_idx, int& root_idx) const;
  friend struct CellEvalAccess;
};

// Builds the cell list only (exposed for tests; build() uses it).
std::vector<Cell> build_cells(const Params& p);

// Closed-form boundary roots and special point of one cell.
void locate_zeros_poles(Cell& cell);

}  // namespace valence

#endif
