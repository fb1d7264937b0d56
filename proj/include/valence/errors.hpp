#ifndef VALENCE_ERRORS_HPP
#define VALENCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace valence {

// Parameter / configuration constraint violations (CLI exit code 2).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: clearance exhausted, refinement limits, evaluation at a
// singularity, out-of-certified-range queries (CLI exit code 3).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace valence

#endif
