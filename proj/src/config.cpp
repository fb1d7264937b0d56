#include "valence/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace valence {

namespace {

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(int line, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line) + ": " + what);
}

double parse_real(int line, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    bad_line(line, "expected a number, got '" + v + "'");
  }
  if (pos != v.size()) bad_line(line, "trailing characters in number '" + v + "'");
  return x;
}

long parse_int(int line, const std::string& v) {
  std::size_t pos = 0;
  long x;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    bad_line(line, "expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) bad_line(line, "trailing characters in integer '" + v + "'");
  return x;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) bad_line(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) bad_line(lineno, "empty key");
    if (val.empty()) bad_line(lineno, "empty value for '" + key + "'");

    if (key == "epsilon") c.params.epsilon = parse_real(lineno, val);
    else if (key == "delta") c.params.delta = parse_real(lineno, val);
    else if (key == "growth_c") c.params.growth_c = parse_real(lineno, val);
    else if (key == "k0") c.params.k0 = static_cast<int>(parse_int(lineno, val));
    else if (key == "k_max") c.params.k_max = static_cast<int>(parse_int(lineno, val));
    else if (key == "quad_tol") c.params.quad_tol = parse_real(lineno, val);
    else if (key == "winding_tol") c.params.winding_tol = parse_real(lineno, val);
    else if (key == "alpha_rule") {
      if (val != "mod4-quarter-turns")
        bad_line(lineno, "unknown alpha_rule '" + val + "'");
      c.params.alpha_rule = AlphaRule::Mod4QuarterTurns;
    } else if (key == "probe_grid_size") {
      c.probe_grid_size = static_cast<int>(parse_int(lineno, val));
      if (c.probe_grid_size < 1) bad_line(lineno, "probe_grid_size must be positive");
    } else if (key == "mc_samples") {
      c.mc_samples = parse_int(lineno, val);
      if (c.mc_samples < 1) bad_line(lineno, "mc_samples must be positive");
    } else if (key == "seed") {
      const long s = parse_int(lineno, val);
      if (s < 1) bad_line(lineno, "seed must be positive");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "r_min") c.r_min = parse_real(lineno, val);
    else if (key == "r_max") c.r_max = parse_real(lineno, val);
    else if (key == "r_steps") {
      c.r_steps = static_cast<int>(parse_int(lineno, val));
      if (c.r_steps < 2) bad_line(lineno, "r_steps must be at least 2");
    } else if (key == "out_dir") c.out_dir = val;
    else bad_line(lineno, "unknown key '" + key + "'");
  }
  validate_params(c.params);
  if (!(c.r_min > 0.0) || !(c.r_max >= c.r_min))
    throw ValidationError("config: need 0 < r_min <= r_max");
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "epsilon = " << format_double(c.params.epsilon) << "\n"
     << "delta = " << format_double(c.params.delta) << "\n"
     << "growth_c = " << format_double(c.params.growth_c) << "\n"
     << "k0 = " << c.params.k0 << "\n"
     << "k_max = " << c.params.k_max << "\n"
     << "quad_tol = " << format_double(c.params.quad_tol) << "\n"
     << "winding_tol = " << format_double(c.params.winding_tol) << "\n"
     << "alpha_rule = mod4-quarter-turns\n"
     << "probe_grid_size = " << c.probe_grid_size << "\n"
     << "mc_samples = " << c.mc_samples << "\n"
     << "seed = " << c.seed << "\n"
     << "r_min = " << format_double(c.r_min) << "\n"
     << "r_max = " << format_double(c.r_max) << "\n"
     << "r_steps = " << c.r_steps << "\n"
     << "out_dir = " << c.out_dir << "\n";
  return os.str();
}

}  // namespace valence
