#ifndef VALENCE_CONFIG_HPP
#define VALENCE_CONFIG_HPP

#include <cstdint>
#include <string>

#include "valence/construction.hpp"

namespace valence {

struct RunConfig {
  Params params;
  int probe_grid_size = 8;
  long mc_samples = 400;
  std::uint64_t seed = 1;
  double r_min = 5.6;
  double r_max = 7.4;
  int r_steps = 10;
  std::string out_dir = ".";
};

// Line-oriented `key = value` text; '#' starts a comment; unknown keys and
// malformed values are errors (with line numbers).  Runs validate_params.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// 17 significant digits: round-trips doubles exactly.
std::string format_double(double v);

// Effective config serialized back in parse_config's own syntax.
std::string dump_config(const RunConfig& c);

}  // namespace valence

#endif
