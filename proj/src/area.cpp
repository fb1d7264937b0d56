#include "valence/area.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "valence/winding.hpp"

namespace valence {

namespace {

// Gauss-Kronrod 7/15 on [-1,1]; Gauss nodes are the odd-indexed Kronrod nodes.
const double kKNodes[15] = {
    -0.99145537112081263921, -0.94910791234275852453, -0.86486442335976907279,
    -0.74153118559939443986, -0.58608723546769113029, -0.40584515137739716691,
    -0.20778495500789846760, 0.0,
    0.20778495500789846760,  0.40584515137739716691,  0.58608723546769113029,
    0.74153118559939443986,  0.86486442335976907279,  0.94910791234275852453,
    0.99145537112081263921};
const double kKWeights[15] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
    0.20443294007529889241, 0.19035057806478540991, 0.16900472663926790283,
    0.14065325971552591875, 0.10479001032225018384, 0.06309209262997855329,
    0.02293532201052922496};
const double kGWeights[7] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776, 0.38183005050511894495, 0.27970539148927666790,
    0.12948496616886969327};

struct Panel {
  // local polar patch around a cell center (or the origin for cell_k < 0):
  // s in [s0,s1], absolute angle phi in [p0,p1]
  int cell_k;  // -1: origin frame
  double s0, s1, p0, p1;
  double value = 0.0;
  double err = 0.0;
};

struct PanelCmp {
  bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

class Quadrature {
 public:
  Quadrature(const ToppilaFunction& fun, double r, double tol)
      : fun_(fun), r_(r), tol_(tol) {
    for (const Cell& c : fun.cells()) {
      const double W =
          std::min(0.2, 120.0 / static_cast<double>(c.N));
      band_w_.push_back(W);
    }
  }

  AreaResult run();

 private:
  const ToppilaFunction& fun_;
  double r_;
  double tol_;
  std::vector<double> band_w_;
  long evals_ = 0;

  double integrand(const Complex& z) {
    ++evals_;
    const double fs = fun_.spherical_derivative(z);
    return fs * fs;
  }

  // Indicator used by the complement grid: outside every cell's band zone.
  bool in_any_zone(const Complex& z) const {
    const auto& cells = fun_.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double W3 = 3.0 * band_w_[i];
      const double s = std::abs(z - cells[i].center);
      if (s >= 1.5 - W3 && s <= 1.5 + W3) return true;
    }
    return false;
  }

  void integrate_panel(Panel& p, bool complement);
  void seed_cell_panels(std::vector<Panel>& out, std::size_t cell_idx);
  void seed_complement(std::vector<Panel>& out);
};

void Quadrature::integrate_panel(Panel& p, bool complement) {
  const bool origin_frame = p.cell_k < 0;
  const Complex center =
      origin_frame ? Complex(0.0, 0.0) : fun_.cell(p.cell_k).center;
  const double d = std::abs(center);
  const double halfp = 0.5 * (p.p1 - p.p0);
  const double midp = 0.5 * (p.p1 + p.p0);
  const bool clip = !origin_frame && (d + p.s1 > r_);
  double sumK = 0.0, sumG = 0.0;
  for (int j = 0; j < 15; ++j) {
    const double phi = midp + halfp * kKNodes[j];
    double lo = p.s0, hi = p.s1;
    if (clip) {
      // ray-disk intersection in the local frame
      const double cd = std::cos(phi - std::arg(center));
      const double disc = r_ * r_ - d * d * (1.0 - cd * cd);
      if (disc <= 0.0) continue;  // ray misses the disk
      const double root = std::sqrt(disc);
      lo = std::max(lo, -d * cd - root);
      hi = std::min(hi, -d * cd + root);
      if (lo >= hi) continue;
    }
    const double halfs = 0.5 * (hi - lo);
    const double mids = 0.5 * (hi + lo);
    double rowK = 0.0, rowG = 0.0;
    double vals[15];
    for (int i = 0; i < 15; ++i) {
      const double s = mids + halfs * kKNodes[i];
      const Complex z = center + s * Complex(std::cos(phi), std::sin(phi));
      double v = 0.0;
      if (!complement || !in_any_zone(z)) v = integrand(z) * s;
      vals[i] = v;
      rowK += kKWeights[i] * v;
    }
    for (int i = 0; i < 7; ++i) rowG += kGWeights[i] * vals[2 * i + 1];
    rowK *= halfs;
    rowG *= halfs;
    sumK += kKWeights[j] * rowK;
    if (j % 2 == 1) sumG += kGWeights[(j - 1) / 2] * rowG;
  }
  p.value = sumK * halfp / M_PI;
  p.err = std::abs(sumK - sumG) * halfp / M_PI;
}

void Quadrature::seed_cell_panels(std::vector<Panel>& out, std::size_t cell_idx) {
  const Cell& c = fun_.cell(5 + static_cast<int>(cell_idx));
  const double W = band_w_[cell_idx];
  const double k = static_cast<double>(c.k);
  const double al = std::arg(c.center);
  // skip cells whose band zone misses the disk entirely
  if (k - r_ >= 1.5 + 3.0 * W) return;

  // radial ladder: geometric refinement toward the root ring at s = 3/2
  std::vector<double> ladder;
  const double wmin = std::max(1.5 / static_cast<double>(c.N), 1e-5);
  std::vector<double> offs;
  for (double w = W; w > wmin; w *= 0.5) offs.push_back(w);
  offs.push_back(0.0);
  for (double o : offs) ladder.push_back(1.5 - o);
  for (std::size_t i = offs.size() - 1; i-- > 0;) ladder.push_back(1.5 + offs[i]);

  // per-root angular strips: boundaries at midpoints of consecutive root angles
  const auto& ra = c.root_angle;
  const std::size_t n = ra.size();
  const bool clipped = (k + 1.5 + 3.0 * W > r_);
  for (std::size_t j = 0; j < n; ++j) {
    const double a0 = ra[j].first;
    const double a1 = (j + 1 < n) ? ra[j + 1].first : ra[0].first + 2.0 * M_PI;
    const double m0 = (j == 0) ? ra[n - 1].first - 2.0 * M_PI : ra[j - 1].first;
    const double lo_ang = 0.5 * (m0 + a0);
    const double hi_ang = 0.5 * (a0 + a1);
    if (clipped) {
      // cheap conservative rejection of strips fully outside the disk
      bool maybe = false;
      for (double phi : {lo_ang, a0, hi_ang}) {
        const double cd = std::cos(phi - al);
        for (double s : {1.5 - W, 1.5 + W}) {
          const double zz = k * k + s * s + 2.0 * s * k * cd;
          if (zz <= (r_ + 1e-9) * (r_ + 1e-9)) maybe = true;
        }
      }
      if (!maybe) continue;
    }
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
      out.push_back(Panel{c.k, ladder[i], ladder[i + 1], lo_ang, hi_ang});
  }

  // sentinel annuli on both sides of the band (coarse wedges, refinable)
  const double in_lo = std::max(0.3, 1.5 - 3.0 * W);
  const double out_hi = std::min(2.0, 1.5 + 3.0 * W);
  const int wedges = 256;
  for (int j = 0; j < wedges; ++j) {
    const double q0 = 2.0 * M_PI * j / wedges;
    const double q1 = 2.0 * M_PI * (j + 1) / wedges;
    out.push_back(Panel{c.k, in_lo, 1.5 - W, q0, q1});
    out.push_back(Panel{c.k, 1.5 + W, out_hi, q0, q1});
  }
}

void Quadrature::seed_complement(std::vector<Panel>& out) {
  const int nr = 24, na = 48;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < na; ++j)
      out.push_back(Panel{-1, r_ * i / static_cast<double>(nr),
                          r_ * (i + 1) / static_cast<double>(nr),
                          2.0 * M_PI * j / na, 2.0 * M_PI * (j + 1) / na});
}

AreaResult Quadrature::run() {
  std::vector<Panel> seed;
  for (std::size_t i = 0; i < fun_.cells().size(); ++i) seed_cell_panels(seed, i);

  double comp_value = 0.0, comp_err = 0.0;
  {
    std::vector<Panel> comp;
    seed_complement(comp);
    for (Panel& p : comp) {
      integrate_panel(p, true);
      comp_value += p.value;
      comp_err += p.err;
    }
  }

  std::priority_queue<Panel, std::vector<Panel>, PanelCmp> heap;
  double total = comp_value, toterr = comp_err;
  for (Panel& p : seed) {
    integrate_panel(p, false);
    total += p.value;
    toterr += p.err;
    heap.push(p);
  }

  const long budget = 300000000;
  long refined = 0;
  while (toterr > 0.5 * tol_ && !heap.empty() && evals_ < budget) {
    Panel p = heap.top();
    if (p.err <= 0.0) break;
    heap.pop();
    total -= p.value;
    toterr -= p.err;
    // split the physically longer side
    const double slen = p.s1 - p.s0;
    const double alen = (p.p1 - p.p0) * 0.5 * (p.s0 + p.s1);
    Panel h1 = p, h2 = p;
    if (slen > alen) {
      const double m = 0.5 * (p.s0 + p.s1);
      h1.s1 = m;
      h2.s0 = m;
    } else {
      const double m = 0.5 * (p.p0 + p.p1);
      h1.p1 = m;
      h2.p0 = m;
    }
    for (Panel* h : {&h1, &h2}) {
      integrate_panel(*h, false);
      total += h->value;
      toterr += h->err;
      heap.push(*h);
    }
    ++refined;
  }

  AreaResult res;
  res.value = total;
  res.error_estimate = toterr;
  res.method = "quadrature";
  res.work_units = evals_;
  return res;
}

}  // namespace

AreaResult area_quadrature(const ToppilaFunction& fun, double r, double tol) {
  if (!(r > 0.0) || r > fun.certified_radius())
    throw NumericalError("area_quadrature: radius outside certified range");
  if (!(tol > 0.0)) throw ValidationError("area_quadrature: tol must be positive");
  Quadrature q(fun, r, tol);
  return q.run();
}

namespace {

AreaResult mc_mean(const std::function<double(const ExtComplex&)>& count,
                   const std::function<bool(const ExtComplex&)>& accept,
                   double measure, long samples, std::uint64_t seed,
                   const char* what) {
  if (samples < 100) throw ValidationError(std::string(what) + ": samples >= 100");
  SphereSampler rng(seed);
  double sum = 0.0, sumsq = 0.0;
  long used = 0, skipped = 0;
  long draws = 0;
  const long draw_cap = samples * 1000;
  while (used < samples) {
    if (++draws > draw_cap)
      throw NumericalError(std::string(what) + ": acceptance region too small");
    const ExtComplex a = rng.next();
    if (!accept(a)) continue;
    double v;
    try {
      v = count(a);
    } catch (const NumericalError&) {
      ++skipped;
      ++used;  // keep the stream deterministic: a failed draw consumes a slot
      continue;
    }
    sum += v;
    sumsq += v * v;
    ++used;
  }
  const long good = used - skipped;
  if (good < 1 || skipped * 100 > used)
    throw NumericalError(std::string(what) + ": too many failed samples");
  const double mean = sum / static_cast<double>(good);
  const double var =
      std::max(0.0, sumsq / static_cast<double>(good) - mean * mean);
  AreaResult res;
  res.value = mean * measure;
  res.error_estimate =
      3.0 * std::sqrt(var / static_cast<double>(good)) * measure;
  res.method = "counting";
  res.work_units = used;
  res.skipped = skipped;
  return res;
}

}  // namespace

AreaResult area_counting_oracle(const ToppilaFunction& fun, double r,
                                long samples, std::uint64_t seed) {
  return mc_mean(
      [&](const ExtComplex& a) {
        return static_cast<double>(count_in_disk(fun, r, a).count);
      },
      [](const ExtComplex&) { return true; }, 1.0, samples, seed,
      "area_counting_oracle");
}

AreaResult cell_area(const ToppilaFunction& fun, int k, double r, RegionY Y,
                     long samples, std::uint64_t seed) {
  const double eps = fun.params().epsilon;
  const double measure = (Y == RegionY::X) ? 1.0 - 3.0 * eps : 1.0;
  return mc_mean(
      [&](const ExtComplex& a) {
        return static_cast<double>(count_in_cell(fun, k, r, a).count);
      },
      [&](const ExtComplex& a) {
        return Y == RegionY::Sphere || in_region_X(a, eps);
      },
      measure, samples, seed, "cell_area");
}

AreaResult area_region_X(const ToppilaFunction& fun, double r, long samples,
                         std::uint64_t seed) {
  const double eps = fun.params().epsilon;
  return mc_mean(
      [&](const ExtComplex& a) {
        return static_cast<double>(count_in_disk(fun, r, a).count);
      },
      [&](const ExtComplex& a) { return in_region_X(a, eps); }, 1.0 - 3.0 * eps,
      samples, seed, "area_region_X");
}

}  // namespace valence
