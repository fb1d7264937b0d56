#include "valence/winding.hpp"

#include <algorithm>
#include <cmath>

namespace valence {

namespace {

constexpr int kMaxDepth = 40;
constexpr long kMaxEvals = 20000000;

// Target-relative view of an image value: continuous-argument coordinate and
// chordal clearance.
struct Target {
  bool is_inf = false;
  Complex a{0.0, 0.0};
  double log_a = 0.0;   // log|a|, finite targets with a != 0
  double arg_neg_a = 0.0;
  ExtComplex ext;
  ExtComplex inv_ext;   // 1/a

  explicit Target(const ExtComplex& t) {
    is_inf = t.is_inf;
    ext = t;
    if (!is_inf) {
      a = t.v;
      const double aa = std::abs(a);
      log_a = (aa > 0.0) ? std::log(aa) : 0.0;
      arg_neg_a = std::arg(-a);
      inv_ext = (aa > 0.0) ? ExtComplex(1.0 / a) : ExtComplex::infinity();
    } else {
      inv_ext = ExtComplex(0.0, 0.0);
    }
  }
};

double rel_arg(const FValue& f, const Target& t) {
  if (t.is_inf) return -f.arg;
  if (std::abs(t.a) == 0.0) return f.arg;
  if (f.is_zero()) return t.arg_neg_a;
  if (f.log_mag > t.log_a + 40.0) return f.arg;
  if (f.log_mag < t.log_a - 40.0) return t.arg_neg_a;
  const Complex fv = std::polar(std::exp(f.log_mag), f.arg);
  return std::arg(fv - t.a);
}

double clearance(const FValue& f, const Target& t) {
  if (t.is_inf) {
    if (f.is_pole()) return 0.0;
    const double lm = f.log_mag;
    if (lm >= 0.0) {
      const double e = std::exp(-lm);
      return e / std::sqrt(1.0 + e * e);
    }
    const double e = std::exp(lm);
    return 1.0 / std::sqrt(1.0 + e * e);
  }
  if (f.is_pole()) return chordal_distance(ExtComplex::infinity(), t.ext);
  if (f.is_zero()) return chordal_distance(ExtComplex(0.0, 0.0), t.ext);
  if (f.log_mag <= 50.0) return chordal_distance(f.to_ext(), t.ext);
  // reciprocal trick: k(f,a) = k(1/f, 1/a)
  const FValue inv{-f.log_mag, -f.arg};
  return chordal_distance(inv.to_ext(), t.inv_ext);
}

double chordal_between(const FValue& f1, const FValue& f2) {
  return chordal_fvalues(f1, f2);
}

struct Sample {
  double t;
  double arg;
  double cl;
  FValue f;
};

struct Tracker {
  const MapFn& fun;
  const Target& target;
  double tol;
  double total = 0.0;
  long samples = 0;
  double min_cl = 1.0;

  Sample make(const Arc& arc, double t, double span) {
    FValue f{};
    bool ok = false;
    const double nudges[4] = {0.0, 1e-9, -1e-9, 3e-9};
    double tt = t;
    for (double nd : nudges) {
      tt = t + nd * span;
      f = fun(arc.point(tt));
      // exact zero/pole sampled: argument coordinate undefined, shift a hair
      if (!f.is_zero() && !f.is_pole()) {
        ok = true;
        break;
      }
    }
    if (!ok) throw NumericalError("winding: singular value on contour");
    if (++samples > kMaxEvals) throw NumericalError("winding: evaluation budget exceeded");
    const double cl = clearance(f, target);
    min_cl = std::min(min_cl, cl);
    if (cl < tol) throw NumericalError("winding: clearance exhausted");
    return {tt, rel_arg(f, target), cl, f};
  }

  bool smooth(const Sample& s0, const Sample& s1, double d) const {
    return std::abs(d) < M_PI / 2.0 &&
           chordal_between(s0.f, s1.f) <
               std::min(0.2, 0.5 * std::min(s0.cl, s1.cl));
  }

  void refine(const Arc& arc, const Sample& s0, const Sample& s1, int depth,
              double span) {
    const double d = std::remainder(s1.arg - s0.arg, 2.0 * M_PI);
    // Interior probe at an irrational fraction: near the root rings the image
    // argument is almost periodic in the root spacing, and a midpoint (or any
    // rational split) can stay in phase with a whole number of hidden turns at
    // every level.  The golden split cannot.
    constexpr double kSplit = 0.38196601125010515;
    if (smooth(s0, s1, d)) {
      // The endpoint tests cannot see a full loop of the image hidden between
      // two nearby values; accept only if both parts retell the same story.
      const Sample sm = make(arc, s0.t + kSplit * (s1.t - s0.t), span);
      const double d0 = std::remainder(sm.arg - s0.arg, 2.0 * M_PI);
      const double d1 = std::remainder(s1.arg - sm.arg, 2.0 * M_PI);
      if (smooth(s0, sm, d0) && smooth(sm, s1, d1) &&
          std::abs(d0 + d1 - d) < 1e-6) {
        total += d;
        return;
      }
      if (depth >= kMaxDepth)
        throw NumericalError("winding: refinement limit exceeded");
      refine(arc, s0, sm, depth + 1, span);
      refine(arc, sm, s1, depth + 1, span);
      return;
    }
    if (depth >= kMaxDepth)
      throw NumericalError("winding: refinement limit exceeded");
    const Sample sm = make(arc, s0.t + kSplit * (s1.t - s0.t), span);
    refine(arc, s0, sm, depth + 1, span);
    refine(arc, sm, s1, depth + 1, span);
  }
};

}  // namespace

void Contour::reverse() {
  std::reverse(pieces.begin(), pieces.end());
  for (Arc& a : pieces) std::swap(a.t0, a.t1);
}

bool Contour::closed(double tol) const {
  if (pieces.empty()) return false;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Arc& a = pieces[i];
    const Arc& b = pieces[(i + 1) % pieces.size()];
    if (std::abs(a.point(a.t1) - b.point(b.t0)) > tol) return false;
  }
  return true;
}

Contour circle_contour(double r) {
  return Contour{{Arc{Complex(0.0, 0.0), r, 0.0, 2.0 * M_PI}}};
}

WindingResult winding_number(const MapFn& fun, const Contour& contour,
                             const ExtComplex& a, double winding_tol,
                             long min_segments) {
  if (!contour.closed()) throw NumericalError("winding: contour not closed");
  const Target target(a);
  Tracker tr{fun, target, winding_tol};
  for (const Arc& arc : contour.pieces) {
    const double span = arc.t1 - arc.t0;
    const long n = std::max<long>(2, min_segments);
    Sample prev = tr.make(arc, arc.t0, span);
    for (long i = 1; i <= n; ++i) {
      const double t = arc.t0 + span * static_cast<double>(i) / static_cast<double>(n);
      const Sample cur = tr.make(arc, t, span);
      tr.refine(arc, prev, cur, 0, span);
      prev = cur;
    }
  }
  const double turns = tr.total / (2.0 * M_PI);
  const long w = std::llround(turns);
  if (std::abs(turns - static_cast<double>(w)) > 0.25)
    throw NumericalError("winding: tracked argument does not close up");
  return {w, tr.samples, tr.min_cl};
}

long contour_point_winding(const Contour& contour, const Complex& p) {
  double total = 0.0;
  for (const Arc& arc : contour.pieces) {
    const int n = 512;
    double prev = std::arg(arc.point(arc.t0) - p);
    for (int i = 1; i <= n; ++i) {
      const double t = arc.t0 + (arc.t1 - arc.t0) * i / static_cast<double>(n);
      const double cur = std::arg(arc.point(t) - p);
      total += std::remainder(cur - prev, 2.0 * M_PI);
      prev = cur;
    }
  }
  return std::llround(total / (2.0 * M_PI));
}

namespace {

bool boundary_roots_are_zeros(const ToppilaFunction& fun, const Cell& c) {
  return (c.boundary_type() == RootType::Zero) != fun.inverted();
}

long enclosed_roots_hint(const ToppilaFunction& fun, double r) {
  long n = 8 * (fun.zeros_in_disk(r) + fun.poles_in_disk(r)) + 4096;
  // circles crossing a root band see arg f spin at up to ~N_k r rad/rad in a
  // narrow window; budget enough uniform samples to stay under pi/2 there
  for (const Cell& c : fun.cells())
    if (std::abs(r - static_cast<double>(c.k)) < 1.5 + 4.5 * fun.params().delta)
      n += 2 * c.N * static_cast<long>(std::ceil(r));
  return std::min<long>(400000, n);
}

}  // namespace

CountResult count_in_disk(const ToppilaFunction& fun, double r, const ExtComplex& a) {
  if (!(r > 0.0) || r > fun.certified_radius())
    throw NumericalError("count_in_disk: radius outside certified range");
  if (a.is_inf) return {fun.poles_in_disk(r), 0, 1.0};
  if (std::abs(a.v) == 0.0) return {fun.zeros_in_disk(r), 0, 1.0};
  const long hint = enclosed_roots_hint(fun, r * 1.001);
  std::string last = "count_in_disk: no attempt";
  for (int m = 0; m < 9; ++m) {
    const double rm = (m == 0) ? r : r * (1.0 + std::ldexp(1e-6, -(m - 1)));
    try {
      const WindingResult w = winding_number(fun.map(), circle_contour(rm), a,
                                             fun.params().winding_tol, hint);
      return {w.winding + fun.poles_in_disk(rm), w.samples_used, w.min_chordal_clearance};
    } catch (const NumericalError& e) {
      last = e.what();
    }
  }
  throw NumericalError(std::string("count_in_disk: jitter exhausted: ") + last);
}

CellCrossing cell_crossing_angles(const ToppilaFunction& fun, int k, double r) {
  const Cell& c = fun.cell(k);
  auto crossing = [&](double d, double rho) {
    const double x = (r * r + d * d - rho * rho) / (2.0 * r * d);
    if (!(x > -1.0 && x < 1.0))
      throw NumericalError("cell_crossing_angles: circle not crossed");
    return std::acos(x);
  };
  if (c.outer.is_line || c.inner.is_line)
    throw NumericalError("cell_crossing_angles: degenerate cell circle");
  CellCrossing cc;
  cc.theta_inner = crossing(std::abs(c.inner.center), c.inner.radius);
  cc.theta_boundary = crossing(static_cast<double>(c.k), 1.5);
  cc.theta_outer = crossing(std::abs(c.outer.center), c.outer.radius);
  return cc;
}

Contour cell_contour(const ToppilaFunction& fun, int k, double r) {
  const Cell& c = fun.cell(k);
  const CellCrossing cc = cell_crossing_angles(fun, k, r);
  const double al = c.alpha;
  const Complex rot_conj = std::conj(c.rot);

  // frame angle (relative to the cell ray) of the upper crossing point on a
  // small circle centered on the ray
  auto frame_angle = [&](const GeneralizedCircle& g, double theta) {
    const Complex z = r * std::polar(1.0, al + theta);
    return std::arg((z - g.center) * rot_conj);
  };
  const double psi_a = frame_angle(c.outer, cc.theta_outer);
  const double psi_b = frame_angle(c.inner, cc.theta_inner);

  Contour g;
  g.pieces.push_back(Arc{Complex(0.0, 0.0), r, al + cc.theta_inner, al + cc.theta_outer});
  g.pieces.push_back(Arc{c.outer.center, c.outer.radius, al + psi_a, al + 2.0 * M_PI - psi_a});
  g.pieces.push_back(Arc{Complex(0.0, 0.0), r, al - cc.theta_outer, al - cc.theta_inner});
  g.pieces.push_back(Arc{c.inner.center, c.inner.radius, al - psi_b, al - 2.0 * M_PI + psi_b});
  if (!g.closed(1e-8)) throw NumericalError("cell_contour: pieces do not close");

  // positive orientation, fixed against the near-side interior point
  const double lo = std::abs(c.outer.center) - c.outer.radius;
  const double hi = std::abs(c.inner.center) - c.inner.radius;
  const Complex p = 0.5 * (lo + hi) * c.rot;
  const long w = contour_point_winding(g, p);
  if (w == -1) g.reverse();
  else if (w != 1) throw NumericalError("cell_contour: orientation check failed");
  return g;
}

CountResult count_in_cell(const ToppilaFunction& fun, int k, double r,
                          const ExtComplex& a, bool factor_only) {
  const Cell& c = fun.cell(k);
  const double da = std::abs(c.outer.center);
  const double ra = c.outer.radius;
  const double db = std::abs(c.inner.center);
  const double rb = c.inner.radius;
  const bool full = r >= da + ra;
  const bool disjoint = r <= da - ra;
  if (disjoint) return {0, 0, 1.0};
  const bool partial = !full;
  if (partial && !(r > db - rb && r < db + rb))
    throw NumericalError("count_in_cell: radius inside the unsupported gap");

  const bool zeros_on_boundary =
      factor_only ? !fun.inverted() : boundary_roots_are_zeros(fun, c);

  // exact enumeration for the two distinguished targets
  if (a.is_inf || (!a.is_inf && std::abs(a.v) == 0.0)) {
    const bool want_zero = !a.is_inf;
    long n = 0;
    if (zeros_on_boundary == want_zero)
      n = full ? c.N : fun.boundary_roots_in_disk(k, r);
    // the multiple point sits in the inner region G_k, outside U_k
    return {n, 0, 1.0};
  }

  const long hint = std::min<long>(200000, 8 * c.N + 1024);
  const MapFn fn = factor_only ? fun.factor_map(k) : fun.map();
  const long poles_full = c.N;  // boundary poles (even role) or the multiple point
  std::string last = "count_in_cell: no attempt";
  for (int m = 0; m < 7; ++m) {
    const double rm = (m == 0) ? r : r * (1.0 + std::ldexp(1e-6, -(m - 1)));
    try {
      if (full) {
        Contour ca{{Arc{c.outer.center, c.outer.radius * ((m == 0) ? 1.0 : (1.0 + std::ldexp(1e-6, -(m - 1)))), 0.0, 2.0 * M_PI}}};
        const WindingResult w =
            winding_number(fn, ca, a, fun.params().winding_tol, hint);
        return {w.winding + poles_full, w.samples_used, w.min_chordal_clearance};
      }
      const Contour g = cell_contour(fun, k, rm);
      const WindingResult w = winding_number(fn, g, a, fun.params().winding_tol, hint);
      const long poles_in_v =
          zeros_on_boundary ? 0 : fun.boundary_roots_in_disk(k, rm);
      return {w.winding + poles_in_v, w.samples_used, w.min_chordal_clearance};
    } catch (const NumericalError& e) {
      last = e.what();
    }
  }
  throw NumericalError(std::string("count_in_cell: jitter exhausted: ") + last);
}

long halfplane_count_exact(const ToppilaFunction& fun, int j, double r,
                           const ExtComplex& a) {
  if (!a.is_inf && std::abs(a.v) != 0.0)
    throw ValidationError("halfplane_count_exact: target must be 0 or infinity");
  const Cell& c = fun.cell(j);
  const bool want_zero = !a.is_inf;
  long n = 0;
  if (boundary_roots_are_zeros(fun, c) == want_zero)
    n += fun.boundary_roots_in_halfplane(j, r);
  const bool special_is_zero =
      (c.special_type() == RootType::Zero) != fun.inverted();
  if (special_is_zero == want_zero && (c.k - 0.5) <= r) n += c.N;
  return n;
}

MaxValenceResult max_valence(const ToppilaFunction& fun, double r,
                             int probe_grid_size) {
  MaxValenceResult res;
  res.n = -1;
  std::vector<ExtComplex> probes;
  probes.push_back(ExtComplex(0.0, 0.0));
  probes.push_back(ExtComplex::infinity());
  probes.push_back(ExtComplex(1.0, 0.0));
  const double golden = 0.6180339887498949;
  for (int i = 0; i < probe_grid_size; ++i) {
    const double u = (i + 0.5) / static_cast<double>(probe_grid_size);
    const double theta = std::acos(1.0 - 2.0 * u);
    const double half = 0.5 * theta;
    const double rad = std::cos(half) / std::sin(half);
    const double phi = 2.0 * M_PI * std::fmod((i + 1) * golden, 1.0);
    const Complex z = std::polar(rad, phi);
    probes.push_back(ExtComplex(z));
    if (std::abs(z) > 0.0) probes.push_back(ExtComplex(1.0 / z));
  }
  for (const ExtComplex& a : probes) {
    ++res.probes;
    try {
      const CountResult cr = count_in_disk(fun, r, a);
      if (cr.count > res.n) {
        res.n = cr.count;
        res.attaining = a;
      }
    } catch (const NumericalError&) {
      ++res.failures;
    }
  }
  if (res.n < 0) throw NumericalError("max_valence: every probe failed");
  return res;
}

}  // namespace valence
