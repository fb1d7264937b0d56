#ifndef VALENCE_MOEBIUS_HPP
#define VALENCE_MOEBIUS_HPP

#include "valence/sphere.hpp"

namespace valence {

// z -> (a z + b) / (c z + d), ad - bc != 0.
struct MoebiusMap {
  Complex a, b, c, d;

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  bool valid() const;
};

// Either a Euclidean circle or a line {z : Re(z * conj(normal)) = offset}.
struct GeneralizedCircle {
  bool is_line = false;
  Complex center{0.0, 0.0};
  double radius = 0.0;
  Complex normal{1.0, 0.0};  // unit modulus when is_line
  double offset = 0.0;

  static GeneralizedCircle circle(Complex c, double r) {
    GeneralizedCircle g;
    g.center = c;
    g.radius = r;
    return g;
  }
  static GeneralizedCircle line(Complex n, double off);
  Complex point_at(double t) const;  // parameterization (angle / arclength)
};

ExtComplex apply(const MoebiusMap& m, const ExtComplex& z);
MoebiusMap inverse(const MoebiusMap& m);
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);  // m1 after m2
GeneralizedCircle image_of_circle(const MoebiusMap& m, const GeneralizedCircle& c);

// The central map T(z) = (z + 1/3) / (1 + z/3): fixes the unit circle, sends
// -1/3 to 0 and -3 to infinity.
MoebiusMap map_T();

// L_k(z) = (2/3)(e^{-i alpha_k} z - k); maps B(k e^{i alpha_k}, 3/2) onto B(0,1).
MoebiusMap cell_map(int k, double alpha_k);

// Abscissa of the vertical line L_j({Re(z e^{-i alpha_j}) = k + 1/2}).
double line_image_abscissa(int k, int j);

// Boundary angle function of T on the unit circle: Arg T(x + i sqrt(1-x^2)),
// decreasing from pi to 0 on [-1, 1].
double boundary_arg_T(double x);

}  // namespace valence

#endif
