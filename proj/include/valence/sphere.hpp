#ifndef VALENCE_SPHERE_HPP
#define VALENCE_SPHERE_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace valence {

using Complex = std::complex<double>;

// Point of the extended plane C u {inf}.  Infinity is an explicit flag, never a
// large magnitude, so poles are exact values.
struct ExtComplex {
  Complex v{0.0, 0.0};
  bool is_inf = false;

  ExtComplex() = default;
  ExtComplex(double re, double im) : v(re, im) {}
  ExtComplex(Complex z) : v(z) {}

  static ExtComplex infinity() {
    ExtComplex e;
    e.is_inf = true;
    return e;
  }
  bool finite() const { return !is_inf; }
};

inline bool operator==(const ExtComplex& a, const ExtComplex& b) {
  if (a.is_inf || b.is_inf) return a.is_inf == b.is_inf;
  return a.v == b.v;
}

// Chordal metric on the Riemann sphere, values in [0,1].
double chordal_distance(const ExtComplex& z, const ExtComplex& a);

// Normalized spherical area of a chordal disk D(a, radius); equals radius^2.
double chordal_disk_area(double radius);

struct ChordalDisk {
  ExtComplex center;
  double radius;  // in (0,1]
  bool contains(const ExtComplex& z) const {
    return chordal_distance(z, center) < radius;
  }
};

// Sphere minus the three chordal disks of area eps centered at 0, inf, 1.
struct RegionX {
  double epsilon;
  double measure() const { return 1.0 - 3.0 * epsilon; }
};

bool in_region_X(const ExtComplex& a, double eps);

// Deterministic uniform sampling w.r.t. normalized spherical measure.
std::vector<ExtComplex> uniform_sphere_sample(std::size_t count, std::uint64_t seed);

// Incremental version of the same stream (used when conditioning on a region).
class SphereSampler {
 public:
  explicit SphereSampler(std::uint64_t seed);
  ExtComplex next();

 private:
  std::mt19937_64 eng_;
  double next_unit();  // uniform in [0,1)
};

}  // namespace valence

#endif
