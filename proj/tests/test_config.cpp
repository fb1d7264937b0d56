#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include "valence/config.hpp"

using namespace valence;

TEST_CASE("empty text yields the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.params.epsilon == 0.01);
  CHECK(c.params.delta == 0.01);
  CHECK(c.params.growth_c == 2.28228);
  CHECK(c.params.k0 == 3);
  CHECK(c.params.k_max == 8);
  CHECK(c.probe_grid_size == 8);
  CHECK(c.mc_samples == 400);
  CHECK(c.seed == 1);
  CHECK(c.r_min == 5.6);
  CHECK(c.r_max == 7.4);
  CHECK(c.r_steps == 10);
  CHECK(c.out_dir == ".");
}

TEST_CASE("comments, blanks and assignments parse") {
  const RunConfig c = parse_config(
      "# run setup\n"
      "\n"
      "growth_c = 2.3   # tweak\n"
      "seed = 77\n"
      "r_min = 5.8\n"
      "r_max = 7.0\n"
      "out_dir = runs/a\n"
      "alpha_rule = mod4-quarter-turns\n");
  CHECK(c.params.growth_c == 2.3);
  CHECK(c.seed == 77);
  CHECK(c.r_min == 5.8);
  CHECK(c.out_dir == "runs/a");
}

TEST_CASE("errors carry line numbers and reject bad values") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text);
      return false;
    } catch (const ValidationError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
  };
  CHECK(fails_with("\nbogus = 1\n", "line 2"));
  CHECK(fails_with("bogus = 1\n", "unknown key"));
  CHECK(fails_with("epsilon = abc\n", "number"));
  CHECK(fails_with("epsilon = 0.01x\n", "trailing"));
  CHECK(fails_with("epsilon\n", "key = value"));
  CHECK(fails_with("seed = 0\n", "seed"));
  CHECK(fails_with("r_steps = 1\n", "r_steps"));
  CHECK(fails_with("alpha_rule = other\n", "alpha_rule"));
  // parameter constraint violations surface too (annulus separation margin)
  CHECK_THROWS_AS(parse_config("delta = 0.02\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("r_min = 8\nr_max = 6\n"), ValidationError);
}

TEST_CASE("seventeen significant digits round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.28228, 1e300, -7.25, 5.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("dump and parse are inverse") {
  RunConfig c;
  c.params.growth_c = 2.5;
  c.seed = 999;
  c.mc_samples = 50;
  c.r_steps = 4;
  c.out_dir = "out";
  const RunConfig d = parse_config(dump_config(c));
  CHECK(d.params.growth_c == c.params.growth_c);
  CHECK(d.seed == c.seed);
  CHECK(d.mc_samples == c.mc_samples);
  CHECK(d.r_steps == c.r_steps);
  CHECK(d.out_dir == c.out_dir);
  CHECK(dump_config(d) == dump_config(c));
}
