#include "valence/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "valence/analysis.hpp"
#include "valence/winding.hpp"

namespace valence {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "informational";
  }
}

namespace {

// measured <= bound expected
CheckReport upper(const std::string& id, const std::string& anchor,
                  double measured, double bound, bool info = false) {
  CheckReport r;
  r.id = id;
  r.anchor = anchor;
  r.measured = measured;
  r.bound = bound;
  r.margin = bound - measured;
  r.status = info ? CheckStatus::Informational
                  : (r.margin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail);
  return r;
}

// measured >= bound expected
CheckReport lower(const std::string& id, const std::string& anchor,
                  double measured, double bound, bool info = false) {
  CheckReport r;
  r.id = id;
  r.anchor = anchor;
  r.measured = measured;
  r.bound = bound;
  r.margin = measured - bound;
  r.status = info ? CheckStatus::Informational
                  : (r.margin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail);
  return r;
}

// |measured - bound| <= tol expected; margin = tol - |deviation|
CheckReport equal(const std::string& id, const std::string& anchor,
                  double measured, double target, double tol) {
  CheckReport r;
  r.id = id;
  r.anchor = anchor;
  r.measured = measured;
  r.bound = target;
  r.margin = tol - std::abs(measured - target);
  r.status = r.margin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

Complex fvalue_point(const FValue& g) {
  return std::exp(g.log_mag) * Complex(std::cos(g.arg), std::sin(g.arg));
}

double chord_to_inf(const FValue& g) {
  if (g.is_pole()) return 0.0;
  if (g.is_zero()) return 1.0;
  const double lm = g.log_mag;
  if (lm > 0.0) {
    const double e = std::exp(-lm);
    return e / std::sqrt(1.0 + e * e);
  }
  const double e = std::exp(lm);
  return 1.0 / std::sqrt(1.0 + e * e);
}

double chord_to_zero(const FValue& g) {
  FValue h = g;
  h.log_mag = -h.log_mag;
  return chord_to_inf(h);
}

double chord_to_one(const FValue& g) { return chordal_fvalues(g, FValue{}); }

}  // namespace

std::vector<CheckReport> check_constants() {
  std::vector<CheckReport> out;
  const double fp = 1.0 - std::atan(2.0 * std::sqrt(2.0)) / M_PI;
  const double fz = 1.0 - std::atan(4.0 * std::sqrt(2.0) / 7.0) / M_PI;
  {
    CheckReport r = lower("const-pole-fraction", "cap fraction at infinity", fp, 0.60817);
    if (fp >= 0.60818) r.status = CheckStatus::Fail;
    r.note = "also < 0.60818";
    out.push_back(r);
  }
  {
    CheckReport r = lower("const-zero-fraction", "cap fraction at zero", fz, 0.78365);
    if (fz >= 0.78366) r.status = CheckStatus::Fail;
    r.note = "also < 0.78366";
    out.push_back(r);
  }
  {
    const Complex z(-1.0 / 3.0, 2.0 * std::sqrt(2.0) / 3.0);
    const ExtComplex w = apply(map_T(), ExtComplex(z));
    const Complex want(1.0 / 3.0, 2.0 * std::sqrt(2.0) / 3.0);
    out.push_back(upper("const-fixed-point", "central map on the unit circle",
                        std::abs(w.v - want), 1e-14));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 1024; ++i) {
      const double t = 2.0 * M_PI * i / 1024.0;
      const ExtComplex w = apply(map_T(), ExtComplex(std::polar(1.0, t)));
      worst = std::max(worst, std::abs(std::abs(w.v) - 1.0));
    }
    out.push_back(upper("const-unit-circle", "central map fixes the unit circle",
                        worst, 1e-12));
  }
  return out;
}

std::vector<CheckReport> check_geometry(const Params& p) {
  std::vector<CheckReport> out;
  const double d = p.delta;
  const MoebiusMap T = map_T();
  const MoebiusMap Ti = inverse(T);

  auto annulus = [&](const MoebiusMap& m, double rc, double lo, double hi,
                     const std::string& id, const std::string& anchor) {
    double worst = 0.0;  // worst signed violation of the annulus bounds
    for (int i = 0; i < 2048; ++i) {
      const double t = 2.0 * M_PI * i / 2048.0;
      const double a = std::abs(apply(m, ExtComplex(std::polar(rc, t))).v);
      worst = std::max({worst, lo - a, a - hi});
    }
    out.push_back(upper(id, anchor, worst, 0.0));
  };
  annulus(T, 1.0 + d, 1.0 + d / 3.0, 1.0 + 3.0 * d, "annulus-outer-map",
          "image of the outer circle");
  annulus(T, 1.0 - d, 1.0 - 3.0 * d, 1.0 - d / 3.0, "annulus-inner-map",
          "image of the inner circle");
  annulus(Ti, 1.0 + d, 1.0 + d / 3.0, 1.0 + 3.0 * d, "annulus-outer-inverse",
          "inverse image of the outer circle");
  annulus(Ti, 1.0 - d, 1.0 - 3.0 * d, 1.0 - d / 3.0, "annulus-inner-inverse",
          "inverse image of the inner circle");

  {
    double mind = 1e300;
    double prev = boundary_arg_T(-1.0);
    for (int i = 1; i <= 2048; ++i) {
      const double x = -1.0 + 2.0 * i / 2048.0;
      const double a = boundary_arg_T(x);
      mind = std::min(mind, prev - a);
      prev = a;
    }
    out.push_back(lower("boundary-arg-monotone",
                        "boundary angle function decreases", mind, 0.0));
  }
  {
    const double s = 0.01;
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = -1.0 + (2.0 - s) * i / 2000.0;
      worst = std::max(worst,
                       std::abs(boundary_arg_T(x) - boundary_arg_T(x + s)));
    }
    CheckReport r = upper("boundary-arg-hoelder",
                          "boundary angle modulus of continuity", worst,
                          4.0 * std::sqrt(s));
    r.note = "step s=0.01";
    out.push_back(r);
  }

  const std::vector<Cell> cells = build_cells(p);
  {
    double worst_out = 0.0, worst_in = 0.0;
    for (const Cell& c : cells) {
      const double far = std::abs(c.outer.center - c.center) + c.outer.radius;
      const double near = c.inner.radius - std::abs(c.inner.center - c.center);
      worst_out = std::max(worst_out, far);
      worst_in = std::min(worst_in == 0.0 ? near : worst_in, near);
    }
    out.push_back(upper("band-annulus-outer", "band inside the widened annulus",
                        worst_out, 1.5 + 4.5 * d));
    out.push_back(lower("band-annulus-inner", "band inside the widened annulus",
                        worst_in, 1.5 - 4.5 * d));
  }
  {
    double gap = 1e300;
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j)
        gap = std::min(gap, std::abs(cells[i].center - cells[j].center) - 3.0);
    out.push_back(lower("cell-separation", "disjoint cell disks", gap, 4.0));
  }
  {
    double worst_a = 0.0, worst_b = 0.0;
    for (const Cell& c : cells) {
      const MoebiusMap Tk = compose(map_T(), cell_map(c.k, c.alpha));
      for (int i = 0; i < 512; ++i) {
        const double t = 2.0 * M_PI * i / 512.0;
        const double ma = std::abs(apply(Tk, ExtComplex(c.outer.point_at(t))).v);
        const double mb = std::abs(apply(Tk, ExtComplex(c.inner.point_at(t))).v);
        worst_a = std::max(worst_a, std::abs(ma - (1.0 + d)));
        worst_b = std::max(worst_b, std::abs(mb - (1.0 - d)));
      }
    }
    out.push_back(upper("circle-preimage-outer",
                        "outer sentinel circle preimage", worst_a, 1e-9));
    out.push_back(upper("circle-preimage-inner",
                        "inner sentinel circle preimage", worst_b, 1e-9));
  }
  return out;
}

std::vector<CheckReport> check_function_tracking(const ToppilaFunction& fun) {
  std::vector<CheckReport> out;
  const Params& p = fun.params();
  const double se = std::sqrt(p.epsilon);
  const auto& cells = fun.cells();

  {
    // between the cells: f stays near 1
    double worst = 0.0;
    const double rmax = p.k_max + 2.0;
    for (int ir = 1; ir <= 22; ++ir) {
      const double r = rmax * ir / 22.0;
      for (int ia = 0; ia < 256; ++ia) {
        const Complex z = std::polar(r, 2.0 * M_PI * ia / 256.0);
        bool gap = true;
        for (const Cell& c : cells)
          if (std::abs(z - c.center) < 1.5 + 4.5 * p.delta) gap = false;
        if (!gap) continue;
        worst = std::max(worst, std::abs(fvalue_point(fun.eval(z)) - 1.0));
      }
    }
    out.push_back(upper("tracking-gap-near-one",
                        "function near one between cells", worst, se / 2.0));
  }

  for (const Cell& c : cells) {
    // inside and across the band, f tracks its own factor
    double worst = 0.0;
    for (double s : {0.3, 0.8, 1.2, 1.5, 1.9}) {
      for (int ia = 0; ia < 128; ++ia) {
        const Complex z =
            c.center + std::polar(s, 2.0 * M_PI * (ia + 0.37) / 128.0);
        FValue g = fun.eval_factor(c.k, z);
        if (!c.odd) {
          // even cells contribute the reciprocal of the factor to f
          g.log_mag = -g.log_mag;
          g.arg = -g.arg;
        }
        worst = std::max(worst, chordal_fvalues(fun.eval(z), g));
      }
    }
    out.push_back(upper("tracking-factor-approx-k" + std::to_string(c.k),
                        "single factor approximation on the cell", worst,
                        se / 2.0));
  }

  {
    double worst_a = 0.0, worst_odd = 0.0, worst_even = 0.0;
    for (const Cell& c : cells) {
      for (int i = 0; i < 512; ++i) {
        const double t = 2.0 * M_PI * i / 512.0;
        const FValue ga = fun.eval(c.outer.point_at(t));
        worst_a = std::max(worst_a, chord_to_one(ga));
        const FValue gb = fun.eval(c.inner.point_at(t));
        if (c.odd)
          worst_odd = std::max(worst_odd, chord_to_inf(gb));
        else
          worst_even = std::max(worst_even, chord_to_zero(gb));
      }
    }
    out.push_back(upper("image-outer-near-one",
                        "outer circles map near one", worst_a, se));
    out.push_back(upper("image-inner-odd-near-inf",
                        "odd inner circles map near infinity", worst_odd, se));
    out.push_back(upper("image-inner-even-near-zero",
                        "even inner circles map near zero", worst_even, se));
  }

  {
    int ok = 0;
    for (const Cell& c : cells) {
      const FValue g = fun.eval(c.roots[0]);
      if (c.odd ? g.is_zero() : g.is_pole()) ++ok;
    }
    out.push_back(equal("root-type-boundary", "boundary root type by parity",
                        ok, static_cast<double>(cells.size()), 0.0));
  }
  {
    int ok = 0;
    for (const Cell& c : cells) {
      const FValue g = fun.eval(c.special);
      if (c.odd ? g.is_pole() : g.is_zero()) ++ok;
    }
    out.push_back(equal("root-type-special", "multiple point type by parity",
                        ok, static_cast<double>(cells.size()), 0.0));
  }
  return out;
}

std::vector<CheckReport> check_counting(const ToppilaFunction& fun) {
  std::vector<CheckReport> out;
  const Params& p = fun.params();
  const Complex probes[5] = {{0.0, 1.0}, {-1.0, 0.0}, {0.0, 2.0},
                             {0.0, -0.5}, {3.0, 0.0}};
  for (int k : {5, 6}) {
    const Cell& c = fun.cell(k);
    for (int i = 0; i < 5; ++i) {
      CheckReport r;
      try {
        const CountResult cr =
            count_in_cell(fun, k, k + 2.0, ExtComplex(probes[i]));
        r = equal("count-constant-k" + std::to_string(k) + "-p" +
                      std::to_string(i),
                  "complete cell valence is constant",
                  static_cast<double>(cr.count), static_cast<double>(c.N), 0.0);
        std::ostringstream os;
        os << "a=(" << probes[i].real() << "," << probes[i].imag() << ")";
        r.note = os.str();
      } catch (const std::exception& e) {
        r.id = "count-constant-k" + std::to_string(k) + "-p" + std::to_string(i);
        r.anchor = "complete cell valence is constant";
        r.status = CheckStatus::Fail;
        r.margin = -1.0;
        r.note = e.what();
      }
      out.push_back(r);
    }
  }

  {
    // single-factor valence spread between same-modulus targets near 1
    long worst = 0;
    int skipped = 0;
    for (int i = 0; i < 20; ++i) {
      const double t =
          2e-3 * std::pow(400.0 / 2e-3, i / 19.0);
      const ExtComplex a1(Complex(1.0, 0.0) + std::polar(t, 0.7));
      const ExtComplex a2(Complex(1.0, 0.0) + std::polar(t, 2.9));
      try {
        const long n1 = count_in_cell(fun, 5, 7.0, a1, true).count;
        const long n2 = count_in_cell(fun, 5, 7.0, a2, true).count;
        worst = std::max(worst, std::labs(n1 - n2));
      } catch (const NumericalError&) {
        ++skipped;
      }
    }
    CheckReport r = upper("spread-same-modulus",
                          "argument principle valence spread",
                          static_cast<double>(worst), 1.0);
    if (skipped > 0) r.note = std::to_string(skipped) + " pair(s) skipped";
    out.push_back(r);
  }

  {
    // empirical whole-function spread over generic targets vs the stated
    // exceptional-set allowance (very loose at this epsilon)
    const Complex gen[6] = {{0.0, 2.0}, {-3.0, 0.0}, {0.5, 2.0},
                           {-0.2, -0.6}, {4.0, 1.0}, {0.3, -1.5}};
    long worst = 0;
    for (const Complex& a : gen) {
      try {
        const long n = count_in_cell(fun, 5, 7.0, ExtComplex(a)).count;
        worst = std::max(worst, std::labs(n - fun.cell(5).N));
      } catch (const NumericalError&) {
      }
    }
    const double eta =
        4.0 * static_cast<double>(fun.cell(5).N) * std::pow(p.epsilon, 0.25);
    out.push_back(upper("spread-empirical", "valence spread allowance",
                        static_cast<double>(worst), eta, true));
  }

  {
    CheckReport r;
    try {
      const long n1 = count_in_cell(fun, 8, 10.0, ExtComplex(0.0, 2.0), true).count;
      const long n2 = count_in_cell(fun, 8, 10.0, ExtComplex(0.0, -2.0), true).count;
      r = equal("conjugate-symmetry-k8", "real-axis cell factor symmetry",
                static_cast<double>(n1), static_cast<double>(n2), 0.0);
    } catch (const std::exception& e) {
      r.id = "conjugate-symmetry-k8";
      r.anchor = "real-axis cell factor symmetry";
      r.status = CheckStatus::Fail;
      r.margin = -1.0;
      r.note = e.what();
    }
    out.push_back(r);
  }

  {
    // disk count dominates the tangent-half-plane count at a slightly
    // smaller radius
    long worstm = 1000000000L;
    for (double r : {5.2, 5.8, 6.2}) {
      const long disk = fun.boundary_roots_in_disk(5, r);
      const long half = fun.boundary_roots_in_halfplane(5, r - 1.5 * std::sqrt(p.epsilon));
      worstm = std::min(worstm, disk - half);
    }
    out.push_back(lower("tangency-halfplane",
                        "half plane versus disk counts",
                        static_cast<double>(worstm), 0.0, true));
  }
  return out;
}

namespace {

// composite Gauss-Kronrod spherical arc length of th -> im(r e^{i th}),
// where speed(th) is the spherical speed |dw/dth| / (1 + |w|^2)
double integrate_speed(const std::function<double(double)>& speed, double a,
                       double b, int panels) {
  static const double nodes[15] = {
      -0.99145537112081263921, -0.94910791234275852453, -0.86486442335976907279,
      -0.74153118559939443986, -0.58608723546769113029, -0.40584515137739716691,
      -0.20778495500789846760, 0.0,
      0.20778495500789846760,  0.40584515137739716691,  0.58608723546769113029,
      0.74153118559939443986,  0.86486442335976907279,  0.94910791234275852453,
      0.99145537112081263921};
  static const double w15[15] = {
      0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
      0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
      0.20443294007529889241, 0.20948214108472782801,
      0.20443294007529889241, 0.19035057806478540991, 0.16900472663926790283,
      0.14065325971552591875, 0.10479001032225018384, 0.06309209262997855329,
      0.02293532201052922496};
  double total = 0.0;
  for (int pi = 0; pi < panels; ++pi) {
    const double lo = a + (b - a) * pi / panels;
    const double hi = a + (b - a) * (pi + 1) / panels;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += w15[i] * speed(mid + half * nodes[i]);
    total += s * half;
  }
  return total;
}

}  // namespace

std::vector<CheckReport> check_arclength(const ToppilaFunction& fun, int k,
                                         double beta) {
  std::vector<CheckReport> out;
  const Params& p = fun.params();
  if (std::abs(beta) > 1.5 - 1.5 * std::sqrt(p.epsilon))
    throw ValidationError("check_arclength: beta outside the crossing range");
  const Cell& c = fun.cell(k);
  const double r = k + beta;
  const CellCrossing cc = cell_crossing_angles(fun, k, r);
  const double e4 = std::pow(p.epsilon, 0.25);
  const double N = static_cast<double>(c.N);
  const Complex rc = std::conj(c.rot);

  // spherical speed of the pure-power image T_k^N along S(0,r)
  auto power_speed = [&](double th) {
    const Complex z = std::polar(r, c.alpha + th);
    const Complex L = (2.0 / 3.0) * (z * rc - static_cast<double>(k));
    const Complex den = 1.0 + L / 3.0;
    const Complex T = (L + 1.0 / 3.0) / den;
    const double m = N * std::log(std::abs(T));
    if (std::abs(m) > 700.0) return 0.0;
    const double Tp = (8.0 / 9.0) / std::norm(den);
    return r * N * (2.0 / 3.0) * Tp / (std::abs(T) * 2.0 * std::cosh(m));
  };
  auto factor_speed = [&](double th) {
    const Complex z = std::polar(r, c.alpha + th);
    return r * fun.factor_spherical_derivative(k, z);
  };

  const int panels =
      std::max(2000, static_cast<int>(48.0 * N * std::sqrt(p.delta)));
  auto measure = [&](const std::function<double(double)>& sp, double lo,
                     double hi) {
    const double v1 = integrate_speed(sp, lo, hi, panels);
    const double v2 = integrate_speed(sp, lo, hi, 2 * panels);
    return std::pair<double, double>(v2, std::abs(v2 - v1));
  };

  {
    const auto [v, err] = measure(power_speed, cc.theta_boundary, cc.theta_outer);
    CheckReport r3 = upper("arc-power-segment",
                           "power image length across the outer half band", v,
                           36.0 / e4);
    r3.note = "resolution delta " + std::to_string(err);
    out.push_back(r3);
  }
  {
    const auto [v, err] = measure(power_speed, cc.theta_inner, cc.theta_outer);
    CheckReport r23 = upper("arc-power-crossing",
                            "power image length across the band", v, 63.0 / e4);
    r23.note = "resolution delta " + std::to_string(err);
    out.push_back(r23);
  }
  {
    const auto [v, err] = measure(factor_speed, cc.theta_inner, cc.theta_outer);
    CheckReport rp = upper("arc-factor-crossing",
                           "factor image length across the band", v, 165.0 / e4);
    rp.note = "resolution delta " + std::to_string(err);
    out.push_back(rp);
  }
  {
    double mn = 1e300;
    for (int i = 0; i <= 100000; ++i) {
      const double x = 4.0 * i / 100000.0;
      mn = std::min(mn, (1.0 + x * x) / (1.0 + (x + 1.0) * (x + 1.0)));
    }
    out.push_back(lower("arc-reciprocal-distortion",
                        "spherical distortion of a unit shift", mn,
                        (5.0 - std::sqrt(5.0)) / (5.0 + std::sqrt(5.0)) -
                            1e-12));
  }
  return out;
}

std::vector<CheckReport> check_halfplane_fractions(const ToppilaFunction& fun) {
  std::vector<CheckReport> out;
  const Params& p = fun.params();
  const double se = std::sqrt(p.epsilon);
  const double e4c = (4.0 / M_PI) * std::pow(p.epsilon, 0.25);
  const ExtComplex zero(0.0, 0.0);
  const ExtComplex inf = ExtComplex::infinity();
  auto N = [&](int j) { return static_cast<double>(fun.cell(j).N); };
  auto cnt = [&](int j, double x, const ExtComplex& a) {
    return static_cast<double>(halfplane_count_exact(fun, j, x, a));
  };

  out.push_back(equal("halfplane-complete-k7", "trailing cell fully counted",
                      cnt(6, 7.5, inf), N(6), 0.0));
  out.push_back(upper("halfplane-zero-upper-k5", "near-side zero fraction",
                      cnt(5, 5.5, zero), (0.78366 + 2.0 / N(5)) * N(5)));
  out.push_back(upper("halfplane-zero-upper-k7", "near-side zero fraction",
                      cnt(7, 7.5, zero), (0.78366 + 2.0 / N(7)) * N(7)));
  out.push_back(upper("halfplane-pole-upper-k5", "next-cell pole fraction",
                      cnt(6, 5.5, inf), (0.60818 + 2.0 / N(6)) * N(6)));
  out.push_back(upper("halfplane-pole-upper-k7", "next-cell pole fraction",
                      cnt(8, 7.5, inf), (0.60818 + 2.0 / N(8)) * N(8)));

  const double hi5 = 5.5 + 1.5 * se;
  out.push_back(upper("halfplane-zero-outer-k5",
                      "zero fraction at the outer edge", cnt(5, hi5, zero),
                      (0.78366 + e4c) * N(5)));
  out.push_back(upper("halfplane-pole-outer-k5",
                      "pole fraction at the outer edge", cnt(6, hi5, inf),
                      (0.60818 + e4c) * N(6)));
  out.push_back(upper("halfplane-next-outer-k5",
                      "spillover into the following cell", cnt(7, hi5, zero),
                      e4c * N(7)));

  const double lo7 = 7.5 - 3.0 * se;
  const double e8c = (8.0 / M_PI) * std::pow(p.epsilon, 0.25);
  out.push_back(lower("halfplane-prev-lower-k7",
                      "previous cell nearly complete", cnt(6, lo7, inf),
                      (1.0 - e8c) * N(6)));
  out.push_back(lower("halfplane-pole-lower-k7",
                      "next-cell pole fraction from below", cnt(8, lo7, inf),
                      (0.60817 - e8c) * N(8)));
  out.push_back(lower("halfplane-pole-lower-k5",
                      "next-cell pole fraction from below",
                      cnt(6, 5.5 - 3.0 * se, inf), (0.60817 - e8c) * N(6)));
  return out;
}

std::vector<CheckReport> run_all_checks(const ToppilaFunction& fun) {
  std::vector<CheckReport> out;
  auto app = [&](std::vector<CheckReport> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  app(check_constants());
  app(check_geometry(fun.params()));
  app(check_function_tracking(fun));
  app(check_counting(fun));
  app(check_arclength(fun, 5, 0.0));
  app(check_halfplane_fractions(fun));
  return out;
}

}  // namespace valence
