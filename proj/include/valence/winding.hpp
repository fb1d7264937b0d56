#ifndef VALENCE_WINDING_HPP
#define VALENCE_WINDING_HPP

#include <functional>
#include <vector>

#include "valence/construction.hpp"

namespace valence {

// One parameterized circular arc: point(t) = center + radius * e^{it},
// t running from t0 to t1 (t1 < t0 means clockwise traversal).
struct Arc {
  Complex center;
  double radius;
  double t0;
  double t1;
  Complex point(double t) const {
    return center + radius * Complex(std::cos(t), std::sin(t));
  }
};

struct Contour {
  std::vector<Arc> pieces;  // closed chain: end of each piece = start of next
  void reverse();
  bool closed(double tol = 1e-10) const;
};

Contour circle_contour(double r);

struct WindingResult {
  long winding = 0;
  long samples_used = 0;
  double min_chordal_clearance = 1.0;
};

using MapFn = std::function<FValue(const Complex&)>;

// Continuous-argument tracking of fun(z) - a along the contour.  min_segments
// is the initial uniform subdivision per piece (aliasing guard; callers pass a
// hint proportional to the expected number of turns).
WindingResult winding_number(const MapFn& fun, const Contour& contour,
                             const ExtComplex& a, double winding_tol,
                             long min_segments = 64);

// Winding of the contour itself (identity map) about a point; used to fix
// orientations programmatically.
long contour_point_winding(const Contour& contour, const Complex& p);

struct CountResult {
  long count = 0;
  long samples = 0;
  double clearance = 1.0;
};

// n(r,a): a-points of f in |z| <= r.  Exact enumeration for a in {0, inf};
// winding plus enclosed-pole count otherwise (deterministic radius jitter on
// a-point-on-circle).
CountResult count_in_disk(const ToppilaFunction& fun, double r, const ExtComplex& a);

// Crossing half-angles (at the origin) of S(0,r) with the inner circle C_b,
// the cell boundary, and the outer circle C_a of cell k.
struct CellCrossing {
  double theta_inner;     // C_b
  double theta_boundary;  // |z - center| = 3/2
  double theta_outer;     // C_a
};
CellCrossing cell_crossing_angles(const ToppilaFunction& fun, int k, double r);

// The partial-cell contour: arcs of S(0,r) between the C_b and C_a crossings
// on both sides, closed through the near arcs of C_a and C_b.  Oriented
// positively (checked programmatically).
Contour cell_contour(const ToppilaFunction& fun, int k, double r);

// n_k(r,a): a-points in U_k intersected with |z| <= r.  factor_only counts
// for the single factor S_k instead of f.  For a outside the image of the
// interior region G_k (in particular a in X) the winding identity
// n_k = Ind + enclosed poles is exact.
CountResult count_in_cell(const ToppilaFunction& fun, int k, double r,
                          const ExtComplex& a, bool factor_only = false);

// Exact enumeration in the half plane Re(z e^{-i alpha_j}) <= r (a = 0 or inf).
long halfplane_count_exact(const ToppilaFunction& fun, int j, double r,
                           const ExtComplex& a);

struct MaxValenceResult {
  long n = 0;
  ExtComplex attaining;
  long probes = 0;
  long failures = 0;
};

// Max of count_in_disk over {0, inf, 1} and a deterministic probe grid closed
// under w -> 1/w.  Probe failures (clearance collapse) are skipped and counted.
MaxValenceResult max_valence(const ToppilaFunction& fun, double r,
                             int probe_grid_size);

}  // namespace valence

#endif
