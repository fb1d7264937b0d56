#ifndef VALENCE_AREA_HPP
#define VALENCE_AREA_HPP

#include <cstdint>
#include <string>

#include "valence/construction.hpp"

namespace valence {

struct AreaResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::string method;   // "quadrature" or "counting"
  long work_units = 0;  // integrand evaluations or Monte-Carlo samples
  long skipped = 0;     // failed Monte-Carlo samples (counting only)
};

// (1/pi) * double integral of f#^2 over B(0,r), adaptive tensor Gauss-Kronrod
// on polar cells pre-refined along the boundary-root rings.
AreaResult area_quadrature(const ToppilaFunction& fun, double r, double tol);

// Mean of n(r,a) over uniform spherical samples; 3 sigma / sqrt(n) error bar.
AreaResult area_counting_oracle(const ToppilaFunction& fun, double r,
                                long samples, std::uint64_t seed);

enum class RegionY { Sphere, X };

// A_k^Y(r): mean over Y-conditioned samples of n_k(r,a), times m(Y).
AreaResult cell_area(const ToppilaFunction& fun, int k, double r, RegionY Y,
                     long samples, std::uint64_t seed);

// A^X(r): mean over X-conditioned samples of n(r,a), times 1 - 3 eps.
AreaResult area_region_X(const ToppilaFunction& fun, double r, long samples,
                         std::uint64_t seed);

}  // namespace valence

#endif
