#include "valence/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace valence {

namespace {

constexpr double kSnapTol = 1e-12;
// Factors with |L_k(z)| beyond this radius contribute less than e^{-200} to
// log f (|T| >= 1.4 on |L| = 2 and N_k >= 322) and are skipped.
constexpr double kSkipRadius = 2.0;

double pow_int(double base, long n) {
  // exact-ish power by long double exponentiation (n*log(base) < 60 here)
  return static_cast<double>(std::pow(static_cast<long double>(base),
                                      static_cast<long double>(n)));
}

}  // namespace

void validate_params(const Params& p) {
  std::ostringstream bad;
  auto fail = [&](const std::string& id, double lhs, const char* rel, double rhs) {
    bad << "  " << id << ": " << lhs << " " << rel << " " << rhs << " violated\n";
  };

  if (!(p.epsilon > 0.0 && p.epsilon < 0.125))
    bad << "  eps-range: epsilon must lie in (0, 1/8), got " << p.epsilon << "\n";
  if (!(p.delta > 0.0 && p.delta < 1.0))
    bad << "  delta-range: delta must lie in (0,1), got " << p.delta << "\n";
  if (!(p.growth_c > 1.0))
    bad << "  growth-range: growth_c must exceed 1, got " << p.growth_c << "\n";
  if (p.k0 < 1) bad << "  k0-range: k0 must be positive, got " << p.k0 << "\n";
  if (p.k_max < 6) bad << "  kmax-range: k_max must be >= 6, got " << p.k_max << "\n";
  if (!(p.quad_tol > 0.0)) bad << "  quad-tol-range: quad_tol must be positive\n";
  if (!(p.winding_tol > 0.0)) bad << "  winding-tol-range: winding_tol must be positive\n";
  if (!bad.str().empty())
    throw ValidationError("parameter validation failed:\n" + bad.str());

  const double se = std::sqrt(p.epsilon);
  // chordal separation margin of the T-annuli images
  const double lhs11 = (1.0 - 3.0 * p.delta) * (1.0 - 3.0 * p.delta) -
                       (1.0 - se) * (1.0 - se);
  if (!(lhs11 > se)) fail("delta-vs-eps-margin", lhs11, ">", se);
  if (!(p.delta < se / 3.0)) fail("delta-upper", p.delta, "<", se / 3.0);

  // sum of factor deviations (1+delta)^{-N_k}, including the untruncated tail,
  // must stay below sqrt(eps)/6
  double sum = 0.0;
  const double l1p = std::log1p(p.delta);
  bool overflow = false;
  for (int k = 5; k <= p.k_max; ++k) {
    const double nk = std::floor(pow_int(p.growth_c, k + p.k0));
    if (nk > 9.0e15) {
      overflow = true;
      break;
    }
    const double e = -nk * l1p;
    sum += (e < -745.0) ? 0.0 : std::exp(e);
  }
  if (overflow) {
    bad << "  degree-overflow: floor(C^(k+k0)) exceeds exact integer range\n";
    throw ValidationError("parameter validation failed:\n" + bad.str());
  }
  sum += 0.5 * truncation_tail_bound(p);
  if (!(sum < se / 6.0)) fail("factor-sum", sum, "<", se / 6.0);

  // inner decay (worst cell k=5): (1-delta)^{N_5} < sqrt(eps)/6
  const double n5 = std::floor(pow_int(p.growth_c, 5 + p.k0));
  const double inner = std::exp(n5 * std::log1p(-p.delta));
  if (!(inner < se / 6.0)) fail("inner-decay", inner, "<", se / 6.0);

  if (!bad.str().empty())
    throw ValidationError("parameter validation failed:\n" + bad.str());
}

double truncation_tail_bound(const Params& p) {
  const double l1p = std::log1p(p.delta);
  const double lc = std::log(p.growth_c);
  double sum = 0.0;
  for (int k = p.k_max + 1; k < p.k_max + 400; ++k) {
    // N_k >= C^{k+k0} - 1
    const double nk = std::exp((k + p.k0) * lc) - 1.0;
    const double e = -nk * l1p;
    if (e < -745.0) break;
    sum += std::exp(e);
  }
  return 2.0 * sum;
}

void locate_zeros_poles(Cell& cell) {
  const MoebiusMap Tinv = inverse(map_T());
  cell.roots.resize(static_cast<std::size_t>(cell.N));
  for (long j = 0; j < cell.N; ++j) {
    const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(cell.N);
    const ExtComplex w = apply(Tinv, ExtComplex(std::cos(th), std::sin(th)));
    cell.roots[static_cast<std::size_t>(j)] = cell.rot * (1.5 * w.v + static_cast<double>(cell.k));
  }
  cell.special = (cell.k - 0.5) * cell.rot;
}

std::vector<Cell> build_cells(const Params& p) {
  validate_params(p);
  std::vector<Cell> cells;
  for (int k = 5; k <= p.k_max; ++k) {
    Cell c;
    c.k = k;
    c.odd = (k % 2) != 0;
    switch (p.alpha_rule) {
      case AlphaRule::Mod4QuarterTurns:
        c.alpha = (k % 4) * (M_PI / 2.0);
        break;
    }
    c.N = static_cast<long>(std::floor(pow_int(p.growth_c, k + p.k0)));
    c.rot = std::polar(1.0, c.alpha);
    c.center = static_cast<double>(k) * c.rot;
    locate_zeros_poles(c);

    c.root_abs.reserve(c.roots.size());
    c.root_proj.reserve(c.roots.size());
    c.root_angle.reserve(c.roots.size());
    const Complex rc = std::conj(c.rot);
    for (std::size_t j = 0; j < c.roots.size(); ++j) {
      c.root_abs.push_back(std::abs(c.roots[j]));
      c.root_proj.push_back((c.roots[j] * rc).real());
      c.root_angle.emplace_back(std::arg(c.roots[j] - c.center), static_cast<int>(j));
    }
    std::sort(c.root_abs.begin(), c.root_abs.end());
    std::sort(c.root_proj.begin(), c.root_proj.end());
    std::sort(c.root_angle.begin(), c.root_angle.end());

    const MoebiusMap Tk = compose(map_T(), cell_map(k, c.alpha));
    const MoebiusMap back = inverse(Tk);
    c.outer = image_of_circle(back, GeneralizedCircle::circle(0.0, 1.0 + p.delta));
    c.inner = image_of_circle(back, GeneralizedCircle::circle(0.0, 1.0 - p.delta));
    cells.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (std::abs(cells[i].center - cells[j].center) < 4.0 - 1e-12)
        throw ValidationError("cell separation violated between k=" +
                              std::to_string(cells[i].k) + " and k=" +
                              std::to_string(cells[j].k));
  return cells;
}

bool FValue::is_zero() const { return std::isinf(log_mag) && log_mag < 0.0; }
bool FValue::is_pole() const { return std::isinf(log_mag) && log_mag > 0.0; }
FValue FValue::zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
FValue FValue::pole() { return {std::numeric_limits<double>::infinity(), 0.0}; }

double chordal_fvalues(const FValue& a, const FValue& b) {
  if ((a.log_mag > 0.0 || a.is_pole()) && (b.log_mag > 0.0 || b.is_pole())) {
    const FValue ia{-a.log_mag, -a.arg};
    const FValue ib{-b.log_mag, -b.arg};
    return chordal_distance(ia.to_ext(), ib.to_ext());
  }
  return chordal_distance(a.to_ext(), b.to_ext());
}

ExtComplex FValue::to_ext() const {
  if (is_pole() || log_mag > 709.0) return ExtComplex::infinity();
  if (is_zero() || log_mag < -745.0) return ExtComplex(0.0, 0.0);
  return ExtComplex(std::polar(std::exp(log_mag), arg));
}

ToppilaFunction ToppilaFunction::build(const Params& p) {
  ToppilaFunction f;
  f.params_ = p;
  f.cells_ = build_cells(p);
  return f;
}

const Cell& ToppilaFunction::cell(int k) const {
  if (k < 5 || k > params_.k_max)
    throw ValidationError("cell index out of range: " + std::to_string(k));
  return cells_[static_cast<std::size_t>(k - 5)];
}

ToppilaFunction ToppilaFunction::reciprocal() const {
  ToppilaFunction f(*this);
  f.invert_ = !f.invert_;
  return f;
}

bool ToppilaFunction::snap(const Complex& z, int& cell_idx, int& root_idx) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (std::abs(z - c.special) <= kSnapTol) {
      cell_idx = static_cast<int>(i);
      root_idx = -2;
      return true;
    }
    const double s = std::abs(z - c.center);
    if (std::abs(s - 1.5) > 1e-9) continue;
    const double ang = std::arg(z - c.center);
    const long n = static_cast<long>(c.root_angle.size());
    const long i0 = std::lower_bound(c.root_angle.begin(), c.root_angle.end(),
                                     std::make_pair(ang, -1)) -
                    c.root_angle.begin();
    for (long off = -1; off <= 1; ++off) {
      const long idx = ((i0 + off) % n + n) % n;
      const int j = c.root_angle[static_cast<std::size_t>(idx)].second;
      if (std::abs(z - c.roots[static_cast<std::size_t>(j)]) <= kSnapTol) {
        cell_idx = static_cast<int>(i);
        root_idx = j;
        return true;
      }
    }
  }
  return false;
}

FValue ToppilaFunction::eval_mask(const Complex& z, int only_k, int skip_k) const {
  if (std::abs(z) > certified_radius())
    throw NumericalError("evaluation outside certified radius |z| <= " +
                         std::to_string(certified_radius()));
  double lm = 0.0, ar = 0.0;
  for (const Cell& c : cells_) {
    if (only_k >= 0 && c.k != only_k) continue;
    if (c.k == skip_k) continue;
    const Complex L = (2.0 / 3.0) * (std::conj(c.rot) * z - static_cast<double>(c.k));
    if (std::abs(L) > kSkipRadius) continue;
    const Complex T = (L + 1.0 / 3.0) / (1.0 + L / 3.0);
    const double aT = std::abs(T);
    const double sign = c.odd ? 1.0 : -1.0;
    Complex logS;
    if (aT == 0.0) {
      // exact special point (normally snapped before we get here)
      return (c.odd != invert_) ? FValue::pole() : FValue::zero();
    }
    const Complex lt(std::log(aT), std::arg(T));
    const Complex w = static_cast<double>(c.N) * lt;
    const double x = w.real();
    if (x > 40.0) {
      if (x < 700.0) {
        const Complex ew = std::exp(-w);
        logS = -ew - 0.5 * ew * ew;
      } else {
        logS = 0.0;
      }
    } else if (x < -40.0) {
      logS = -w + Complex(0.0, M_PI);
    } else {
      const Complex S = 1.0 - std::exp(-w);
      const double aS = std::abs(S);
      if (aS == 0.0) {
        // unlisted exact boundary root hit; treat as the root value
        return (c.odd != invert_) ? FValue::zero() : FValue::pole();
      }
      logS = Complex(std::log(aS), std::arg(S));
    }
    lm += sign * logS.real();
    ar += sign * logS.imag();
  }
  if (invert_) {
    lm = -lm;
    ar = -ar;
  }
  return {lm, ar};
}

FValue ToppilaFunction::eval(const Complex& z) const {
  int ci, ri;
  if (snap(z, ci, ri)) {
    const Cell& c = cells_[static_cast<std::size_t>(ci)];
    const RootType t = (ri == -2) ? c.special_type() : c.boundary_type();
    const bool zero = (t == RootType::Zero) != invert_;
    return zero ? FValue::zero() : FValue::pole();
  }
  return eval_mask(z, -1, -1);
}

ExtComplex ToppilaFunction::eval_ext(const Complex& z) const { return eval(z).to_ext(); }

FValue ToppilaFunction::eval_factor(int k, const Complex& z) const {
  cell(k);
  int ci, ri;
  if (snap(z, ci, ri) && cells_[static_cast<std::size_t>(ci)].k == k) {
    const Cell& c = cells_[static_cast<std::size_t>(ci)];
    // single factor S_k: boundary roots are zeros, special point the pole,
    // regardless of the cell's role inside f
    const bool zero = (ri != -2) != invert_;
    return zero ? FValue::zero() : FValue::pole();
  }
  // the factor itself (odd sign convention): flip sign for even cells so the
  // view is S_k, not 1/S_k
  FValue v = eval_mask(z, k, -1);
  if (!cell(k).odd) {
    v.log_mag = -v.log_mag;
    v.arg = -v.arg;
  }
  return v;
}

FValue ToppilaFunction::eval_excluding(int k, const Complex& z) const {
  cell(k);
  return eval_mask(z, -1, k);
}

Complex ToppilaFunction::log_derivative(const Complex& z) const {
  if (std::abs(z) > certified_radius())
    throw NumericalError("evaluation outside certified radius");
  int ci, ri;
  if (snap(z, ci, ri)) throw NumericalError("log_derivative at a zero/pole");
  Complex sum = 0.0;
  for (const Cell& c : cells_) {
    const Complex L = (2.0 / 3.0) * (std::conj(c.rot) * z - static_cast<double>(c.k));
    if (std::abs(L) > kSkipRadius) continue;
    const Complex T = (L + 1.0 / 3.0) / (1.0 + L / 3.0);
    const Complex den1 = 1.0 + L / 3.0;
    // T_k'(z) by the chain rule; |L_k'| = 2/3
    const Complex Td = (8.0 / 9.0) / (den1 * den1) * (2.0 / 3.0) * std::conj(c.rot);
    const double aT = std::abs(T);
    if (aT == 0.0) throw NumericalError("log_derivative at a special point");
    const Complex lt(std::log(aT), std::arg(T));
    const Complex w = static_cast<double>(c.N) * lt;
    const double x = w.real();
    Complex term;
    const Complex base = static_cast<double>(c.N) * Td / T;
    if (x > 40.0) {
      term = (x < 700.0) ? base * std::exp(-w) : Complex(0.0);
    } else if (x < -40.0) {
      term = -base;
    } else {
      const Complex P = std::exp(w);
      const Complex d = P - 1.0;
      if (std::abs(d) == 0.0) throw NumericalError("log_derivative at a boundary root");
      term = base / d;
    }
    sum += (c.odd ? 1.0 : -1.0) * term;
  }
  return invert_ ? -sum : sum;
}

double ToppilaFunction::spherical_derivative(const Complex& z) const {
  if (std::abs(z) > certified_radius())
    throw NumericalError("evaluation outside certified radius");
  int ci, ri;
  if (snap(z, ci, ri)) {
    const Cell& c = cells_[static_cast<std::size_t>(ci)];
    if (ri == -2) return 0.0;  // multiplicity N_k >= 2 kills f#
    const Complex z0 = c.roots[static_cast<std::size_t>(ri)];
    const Complex L = (2.0 / 3.0) * (std::conj(c.rot) * z0 - static_cast<double>(c.k));
    const Complex den1 = 1.0 + L / 3.0;
    const double aTd = (8.0 / 9.0) / std::norm(den1) * (2.0 / 3.0);
    const double sp = static_cast<double>(c.N) * aTd;  // |S_k'(z0)|, |T|=1 there
    const FValue g = eval_excluding(c.k, z0);
    // h = version with a simple zero at z0; f# = |S_k'| * |h/S_k|(z0)
    const bool zero_here = (c.boundary_type() == RootType::Zero) != invert_;
    const double lg = zero_here ? g.log_mag : -g.log_mag;
    if (lg > 700.0) return std::numeric_limits<double>::infinity();
    return sp * std::exp(lg);
  }
  const FValue v = eval_mask(z, -1, -1);
  const Complex ld = log_derivative(z);
  const double a = std::exp(-std::abs(v.log_mag));
  return std::abs(ld) * a / (1.0 + a * a);
}

double ToppilaFunction::factor_spherical_derivative(int k, const Complex& z) const {
  const Cell& c = cell(k);
  int ci, ri;
  if (snap(z, ci, ri) && cells_[static_cast<std::size_t>(ci)].k == k) {
    if (ri == -2) return 0.0;
    const Complex z0 = c.roots[static_cast<std::size_t>(ri)];
    const Complex L = (2.0 / 3.0) * (std::conj(c.rot) * z0 - static_cast<double>(c.k));
    const Complex den1 = 1.0 + L / 3.0;
    return static_cast<double>(c.N) * (8.0 / 9.0) / std::norm(den1) * (2.0 / 3.0);
  }
  const Complex L = (2.0 / 3.0) * (std::conj(c.rot) * z - static_cast<double>(c.k));
  if (std::abs(L) > kSkipRadius) return 0.0;
  const Complex T = (L + 1.0 / 3.0) / (1.0 + L / 3.0);
  const double aT = std::abs(T);
  if (aT == 0.0) return 0.0;
  const Complex den1 = 1.0 + L / 3.0;
  const Complex Td = (8.0 / 9.0) / (den1 * den1) * (2.0 / 3.0) * std::conj(c.rot);
  const Complex lt(std::log(aT), std::arg(T));
  const Complex w = static_cast<double>(c.N) * lt;
  const double x = w.real();
  const Complex base = static_cast<double>(c.N) * Td / T;
  Complex term;
  double lm;  // log |S_k|
  if (x > 40.0) {
    term = (x < 700.0) ? base * std::exp(-w) : Complex(0.0);
    lm = 0.0;
  } else if (x < -40.0) {
    term = -base;
    lm = -x;
  } else {
    const Complex P = std::exp(w);
    const Complex d = P - 1.0;
    if (std::abs(d) == 0.0) return 0.0;  // unreachable: snapped above
    term = base / d;
    lm = std::log(std::abs(1.0 - 1.0 / P));
  }
  const double a = std::exp(-std::abs(lm));
  return std::abs(term) * a / (1.0 + a * a);
}

namespace {

long count_le(const std::vector<double>& sorted, double x) {
  return static_cast<long>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                           sorted.begin());
}

}  // namespace

long ToppilaFunction::zeros_in_disk(double r) const {
  long n = 0;
  for (const Cell& c : cells_) {
    if ((c.boundary_type() == RootType::Zero) != invert_)
      n += count_le(c.root_abs, r);
    if ((c.special_type() == RootType::Zero) != invert_ && (c.k - 0.5) <= r)
      n += c.N;
  }
  return n;
}

long ToppilaFunction::poles_in_disk(double r) const {
  long n = 0;
  for (const Cell& c : cells_) {
    if ((c.boundary_type() == RootType::Pole) != invert_)
      n += count_le(c.root_abs, r);
    if ((c.special_type() == RootType::Pole) != invert_ && (c.k - 0.5) <= r)
      n += c.N;
  }
  return n;
}

long ToppilaFunction::boundary_roots_in_disk(int k, double r) const {
  return count_le(cell(k).root_abs, r);
}

long ToppilaFunction::boundary_roots_in_halfplane(int k, double x) const {
  return count_le(cell(k).root_proj, x);
}

std::function<FValue(const Complex&)> ToppilaFunction::map() const {
  return [f = *this](const Complex& z) { return f.eval(z); };
}

std::function<FValue(const Complex&)> ToppilaFunction::factor_map(int k) const {
  cell(k);
  return [f = *this, k](const Complex& z) { return f.eval_factor(k, z); };
}

}  // namespace valence
