#include "valence/moebius.hpp"

#include <cmath>
#include <stdexcept>

namespace valence {

bool MoebiusMap::valid() const {
  const double det = std::abs(a * d - b * c);
  double m = 0.0;
  for (const Complex& x : {a, b, c, d}) m = std::max(m, std::abs(x));
  return det > 1e-12 * m * m;
}

GeneralizedCircle GeneralizedCircle::line(Complex n, double off) {
  const double an = std::abs(n);
  if (an == 0.0) throw std::invalid_argument("line: zero normal");
  GeneralizedCircle g;
  g.is_line = true;
  g.normal = n / an;
  g.offset = off / an;
  return g;
}

Complex GeneralizedCircle::point_at(double t) const {
  if (is_line) {
    // foot of the normal plus t along the direction i*normal
    return normal * offset + Complex(0.0, 1.0) * normal * t;
  }
  return center + radius * Complex(std::cos(t), std::sin(t));
}

ExtComplex apply(const MoebiusMap& m, const ExtComplex& z) {
  if (!m.valid()) throw std::invalid_argument("apply: degenerate Moebius map");
  if (z.is_inf) {
    if (std::abs(m.c) == 0.0) return ExtComplex::infinity();
    return ExtComplex(m.a / m.c);
  }
  const Complex num = m.a * z.v + m.b;
  const Complex den = m.c * z.v + m.d;
  if (std::abs(den) == 0.0) return ExtComplex::infinity();
  return ExtComplex(num / den);
}

MoebiusMap inverse(const MoebiusMap& m) {
  if (!m.valid()) throw std::invalid_argument("inverse: degenerate Moebius map");
  return {m.d, -m.b, -m.c, m.a};
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
          m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

namespace {

// Circumcircle through three points, or a line if they are (nearly) collinear.
GeneralizedCircle through_three(Complex z1, Complex z2, Complex z3) {
  const double x1 = z1.real(), y1 = z1.imag();
  const double x2 = z2.real(), y2 = z2.imag();
  const double x3 = z3.real(), y3 = z3.imag();
  const double d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
  double scale = std::max({std::abs(z1 - z2), std::abs(z2 - z3), std::abs(z3 - z1)});
  if (std::abs(d) <= 1e-10 * scale * scale) {
    const Complex dir = z2 - z1;
    const Complex n = Complex(0.0, 1.0) * dir / std::abs(dir);
    return GeneralizedCircle::line(n, (z1 * std::conj(n)).real());
  }
  const double q1 = std::norm(z1), q2 = std::norm(z2), q3 = std::norm(z3);
  const double ux = (q1 * (y2 - y3) + q2 * (y3 - y1) + q3 * (y1 - y2)) / d;
  const double uy = (q1 * (x3 - x2) + q2 * (x1 - x3) + q3 * (x2 - x1)) / d;
  const Complex c(ux, uy);
  return GeneralizedCircle::circle(c, std::abs(z1 - c));
}

}  // namespace

GeneralizedCircle image_of_circle(const MoebiusMap& m, const GeneralizedCircle& c) {
  if (!m.valid()) throw std::invalid_argument("image_of_circle: degenerate map");
  // If the pole of m lies on c (within tolerance) the image is a line through
  // the images of two other points.
  bool pole_on_curve = false;
  Complex pole{0.0, 0.0};
  if (std::abs(m.c) > 0.0) {
    pole = -m.d / m.c;
    if (c.is_line) {
      pole_on_curve = std::abs((pole * std::conj(c.normal)).real() - c.offset) < 1e-10;
    } else {
      pole_on_curve = std::abs(std::abs(pole - c.center) - c.radius) < 1e-10;
    }
  }
  // Pick three parameters; for the pole-on-curve case avoid landing on the pole.
  double ts[3] = {0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0};
  if (c.is_line) {
    ts[0] = -1.0;
    ts[1] = 0.0;
    ts[2] = 1.0;
  }
  Complex img[3];
  int got = 0;
  double t = c.is_line ? -1.0 : 0.0;
  const double step = c.is_line ? 0.7 : 2.0 * M_PI / 7.0;
  for (int tries = 0; got < 3 && tries < 32; ++tries, t += step) {
    const Complex z = c.point_at(t);
    if (std::abs(z - pole) < (c.is_line ? 1e-8 : 1e-8 * std::max(1.0, c.radius)))
      continue;
    const ExtComplex w = apply(m, ExtComplex(z));
    if (w.is_inf) continue;
    img[got++] = w.v;
  }
  if (got < 3) throw std::runtime_error("image_of_circle: degenerate sampling");
  if (pole_on_curve) {
    const Complex dir = img[1] - img[0];
    const Complex n = Complex(0.0, 1.0) * dir / std::abs(dir);
    return GeneralizedCircle::line(n, (img[0] * std::conj(n)).real());
  }
  return through_three(img[0], img[1], img[2]);
}

MoebiusMap map_T() { return {1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0}; }

MoebiusMap cell_map(int k, double alpha_k) {
  if (k < 5) throw std::invalid_argument("cell_map: k >= 5 required");
  const Complex rot = std::polar(1.0, -alpha_k);
  return {(2.0 / 3.0) * rot, Complex(-(2.0 / 3.0) * k), 0.0, 1.0};
}

double line_image_abscissa(int k, int j) {
  if (k < 5 || j < 5) throw std::invalid_argument("line_image_abscissa: j,k >= 5");
  return (2.0 / 3.0) * (k - j) + 1.0 / 3.0;
}

double boundary_arg_T(double x) {
  const double y = std::sqrt(std::max(0.0, 1.0 - x * x));
  const ExtComplex w = apply(map_T(), ExtComplex(x, y));
  return std::atan2(w.v.imag(), w.v.real());
}

}  // namespace valence
