#include "valence/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace valence {

double chordal_distance(const ExtComplex& z, const ExtComplex& a) {
  if (z.is_inf && a.is_inf) return 0.0;
  if (z.is_inf) return chordal_distance(a, z);
  if (a.is_inf) return 1.0 / std::sqrt(1.0 + std::norm(z.v));
  const double num = std::abs(z.v - a.v);
  return num / (std::sqrt(1.0 + std::norm(z.v)) * std::sqrt(1.0 + std::norm(a.v)));
}

double chordal_disk_area(double radius) {
  if (!(radius > 0.0) || radius > 1.0)
    throw std::invalid_argument("chordal_disk_area: radius must be in (0,1]");
  return radius * radius;
}

bool in_region_X(const ExtComplex& a, double eps) {
  const double s = std::sqrt(eps);
  // The three excluded disks must be disjoint: pairwise chordal center
  // distances are 1, 1/sqrt2, 1/sqrt2.
  if (2.0 * s >= 1.0 / std::sqrt(2.0))
    throw std::invalid_argument("in_region_X: excluded disks overlap (eps too large)");
  return chordal_distance(a, ExtComplex(0.0, 0.0)) >= s &&
         chordal_distance(a, ExtComplex::infinity()) >= s &&
         chordal_distance(a, ExtComplex(1.0, 0.0)) >= s;
}

SphereSampler::SphereSampler(std::uint64_t seed) : eng_(seed) {}

double SphereSampler::next_unit() {
  // 53-bit mantissa; identical across platforms for a given seed.
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

ExtComplex SphereSampler::next() {
  const double u = next_unit();
  const double v = next_unit();
  // cos(theta) uniform in [-1,1]; stereographic projection from the north
  // pole: |z| = cot(theta/2), so theta -> 0 is infinity.
  const double ct = 1.0 - 2.0 * u;
  const double theta = std::acos(ct);
  const double half = 0.5 * theta;
  if (half == 0.0) return ExtComplex::infinity();
  const double r = std::cos(half) / std::sin(half);
  const double phi = 2.0 * M_PI * v;
  return ExtComplex(r * std::cos(phi), r * std::sin(phi));
}

std::vector<ExtComplex> uniform_sphere_sample(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("uniform_sphere_sample: count >= 1");
  SphereSampler s(seed);
  std::vector<ExtComplex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.next());
  return out;
}

}  // namespace valence
