#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "valence/analysis.hpp"
#include "valence/area.hpp"
#include "valence/config.hpp"
#include "valence/construction.hpp"
#include "valence/verify.hpp"
#include "valence/winding.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using valence::format_double;

valence::ExtComplex parse_target(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF")
    return valence::ExtComplex::infinity();
  if (s == "i") return valence::ExtComplex(0.0, 1.0);
  if (s == "-i") return valence::ExtComplex(0.0, -1.0);
  const std::size_t comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      std::size_t pos = 0;
      const double re = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return valence::ExtComplex(re, 0.0);
    }
    std::size_t p1 = 0, p2 = 0;
    const std::string l = s.substr(0, comma), r = s.substr(comma + 1);
    const double re = std::stod(l, &p1);
    const double im = std::stod(r, &p2);
    if (p1 != l.size() || p2 != r.size()) throw std::invalid_argument(s);
    return valence::ExtComplex(re, im);
  } catch (const std::exception&) {
    throw valence::ValidationError("cannot parse point '" + s +
                                   "' (expected RE, RE,IM or inf)");
  }
}

struct Out {
  std::filesystem::path dir;
  explicit Out(const std::string& d) : dir(d) {
    std::filesystem::create_directories(dir);
  }
  std::ofstream open(const std::string& name) const {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw valence::NumericalError("cannot write " + (dir / name).string());
    return f;
  }
};

void write_manifest(const Out& out, const std::string& subcommand,
                    const valence::RunConfig& cfg, double wall_s) {
  nlohmann::json m;
  m["tool"] = "valence-forge";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["seed"] = cfg.seed;
  m["wall_time_s"] = wall_s;
  m["config"] = valence::dump_config(cfg);
  std::ofstream f = out.open("manifest.json");
  f << m.dump(2) << "\n";
}

std::string ext_fields(const valence::ExtComplex& a) {
  if (a.is_inf) return "0,0,1";
  return format_double(a.v.real()) + "," + format_double(a.v.imag()) + ",0";
}

int run_verify(const valence::RunConfig& cfg, const Out& out) {
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  const std::vector<valence::CheckReport> reps = valence::run_all_checks(fun);
  std::ofstream csv = out.open("verify.csv");
  csv << "check_id,anchor,status,measured,bound,margin\n";
  int failures = 0;
  for (const valence::CheckReport& r : reps) {
    const char* st = valence::status_name(r.status);
    csv << r.id << "," << r.anchor << "," << st << ","
        << format_double(r.measured) << "," << format_double(r.bound) << ","
        << format_double(r.margin) << "\n";
    std::cout << (r.status == valence::CheckStatus::Fail ? "FAIL " : "ok   ")
              << r.id << "  [" << st << "]  measured=" << format_double(r.measured)
              << " bound=" << format_double(r.bound)
              << " margin=" << format_double(r.margin);
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    if (r.status == valence::CheckStatus::Fail) ++failures;
  }
  std::cout << reps.size() << " checks, " << failures << " failure(s)\n";
  return failures == 0 ? 0 : 3;
}

int run_construct(const valence::RunConfig& cfg, const Out& out) {
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  std::ofstream csv = out.open("construct.csv");
  csv << "k,parity,N_k,alpha_k,type,re,im,multiplicity\n";
  for (const valence::Cell& c : fun.cells()) {
    const std::string head = std::to_string(c.k) + "," +
                             (c.odd ? "odd" : "even") + "," +
                             std::to_string(c.N) + "," + format_double(c.alpha);
    const char* rt = c.odd ? "zero" : "pole";
    for (const valence::Complex& z : c.roots)
      csv << head << "," << rt << "," << format_double(z.real()) << ","
          << format_double(z.imag()) << ",1\n";
    csv << head << ",special," << format_double(c.special.real()) << ","
        << format_double(c.special.imag()) << "," << c.N << "\n";
  }
  return 0;
}

int run_eval(const valence::RunConfig& cfg, const Out& out,
             const valence::ExtComplex& z) {
  if (z.is_inf)
    throw valence::ValidationError("eval: the point must be finite");
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  const valence::FValue g = fun.eval(z.v);
  const valence::ExtComplex w = g.to_ext();
  std::ofstream csv = out.open("eval.csv");
  csv << "z_re,z_im,value_re,value_im,value_is_inf,log_mag,arg\n";
  csv << format_double(z.v.real()) << "," << format_double(z.v.imag()) << ","
      << ext_fields(w) << "," << format_double(g.log_mag) << ","
      << format_double(g.arg) << "\n";
  std::cout << "f(" << format_double(z.v.real()) << ","
            << format_double(z.v.imag()) << ") = "
            << (w.is_inf ? std::string("inf")
                         : format_double(w.v.real()) + "+" +
                               format_double(w.v.imag()) + "i")
            << "  log|f|=" << format_double(g.log_mag) << "\n";
  return 0;
}

int run_count(const valence::RunConfig& cfg, const Out& out, double r,
              const valence::ExtComplex& a) {
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  const valence::CountResult cr = valence::count_in_disk(fun, r, a);
  std::ofstream csv = out.open("count.csv");
  csv << "r,a_re,a_im,a_is_inf,count,samples,clearance\n";
  csv << format_double(r) << "," << ext_fields(a) << "," << cr.count << ","
      << cr.samples << "," << format_double(cr.clearance) << "\n";
  std::cout << "n(" << format_double(r) << ") = " << cr.count << "\n";
  return 0;
}

int run_area(const valence::RunConfig& cfg, const Out& out, double r) {
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  const valence::AreaResult q =
      valence::area_quadrature(fun, r, cfg.params.quad_tol);
  const valence::AreaResult m =
      valence::area_counting_oracle(fun, r, cfg.mc_samples, cfg.seed);
  std::ofstream csv = out.open("area.csv");
  csv << "r,method,value,error,work_units\n";
  for (const valence::AreaResult* a : {&q, &m})
    csv << format_double(r) << "," << a->method << ","
        << format_double(a->value) << "," << format_double(a->error_estimate)
        << "," << a->work_units << "\n";
  std::cout << "A(" << format_double(r) << ") quadrature " << format_double(q.value)
            << " +- " << format_double(q.error_estimate) << ", counting "
            << format_double(m.value) << " +- " << format_double(m.error_estimate)
            << "\n";
  return 0;
}

int run_sweep(const valence::RunConfig& cfg, const Out& out) {
  const valence::ToppilaFunction fun = valence::ToppilaFunction::build(cfg.params);
  const std::vector<valence::SweepRow> rows =
      valence::sweep(fun, cfg.r_min, cfg.r_max, cfg.r_steps, cfg.seed,
                     cfg.probe_grid_size, cfg.mc_samples);
  std::ofstream csv = out.open("sweep.csv");
  csv << "r,interval,n_r,attain_re,attain_im,attain_is_inf,A_quad,A_quad_err,"
         "A_mc,A_mc_err,ratio,predicted\n";
  int failed = 0;
  for (const valence::SweepRow& row : rows) {
    csv << format_double(row.r) << "," << row.interval << "," << row.n_r << ","
        << ext_fields(row.attaining) << "," << format_double(row.a_quad) << ","
        << format_double(row.a_quad_err) << "," << format_double(row.a_mc)
        << "," << format_double(row.a_mc_err) << ","
        << format_double(row.ratio) << "," << format_double(row.predicted)
        << "\n";
    if (!row.ok) {
      ++failed;
      std::cerr << "sweep r=" << format_double(row.r) << " failed: "
                << row.status << "\n";
    } else {
      std::cout << "r=" << format_double(row.r) << " n=" << row.n_r
                << " A=" << format_double(row.a_quad)
                << " ratio=" << format_double(row.ratio) << "\n";
    }
  }
  return failed == 0 ? 0 : 3;
}

int run_optimize_c(const valence::RunConfig& cfg, const Out& out) {
  (void)cfg;
  const valence::RatioModel model;
  const valence::OptimizeResult res = valence::optimize_C(model);
  std::ofstream csv = out.open("optimize_c.csv");
  csv << "C,objective\n";
  for (int i = 0; i <= 400; ++i) {
    const double c = 1.05 + (6.0 - 1.05) * i / 400.0;
    csv << format_double(c) << ","
        << format_double(valence::ratio_objective(model, c)) << "\n";
  }
  std::cout << "C_star,value\n"
            << format_double(res.c_star) << "," << format_double(res.value)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit meromorphic function with valence/area ratio above 1"};
  app.require_subcommand(1);

  std::string config_path, out_dir, a_str;
  std::uint64_t seed = 0;
  double r = 0.0, r_min = 0.0, r_max = 0.0;
  int r_steps = 0;
  bool have_r = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (key = value lines)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed override");
    return sub;
  };
  CLI::App* verify = add_common(app.add_subcommand("verify", "run the check suite"));
  CLI::App* construct =
      add_common(app.add_subcommand("construct", "dump zeros and poles"));
  CLI::App* eval = add_common(app.add_subcommand("eval", "evaluate f at a point"));
  eval->add_option("--a", a_str, "evaluation point RE,IM")->required();
  CLI::App* count =
      add_common(app.add_subcommand("count", "count a-points in a disk"));
  count->add_option("--r", r, "disk radius")->required();
  count->add_option("--a", a_str, "target value RE,IM or inf")->required();
  CLI::App* area = add_common(app.add_subcommand("area", "average valence at r"));
  area->add_option("--r", r, "disk radius")->required();
  CLI::App* sweep = add_common(app.add_subcommand("sweep", "ratio sweep over r"));
  sweep->add_option("--r-min", r_min, "sweep start radius");
  sweep->add_option("--r-max", r_max, "sweep end radius");
  sweep->add_option("--r-steps", r_steps, "sweep row count");
  CLI::App* opt = add_common(
      app.add_subcommand("optimize-c", "maximize the growth-constant objective"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }
  (void)have_r;

  const auto t0 = std::chrono::steady_clock::now();
  std::string subname;
  int code = 0;
  try {
    valence::RunConfig cfg;
    if (!config_path.empty()) cfg = valence::load_config_file(config_path);
    if (seed != 0) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (sweep->parsed()) {
      if (sweep->count("--r-min")) cfg.r_min = r_min;
      if (sweep->count("--r-max")) cfg.r_max = r_max;
      if (sweep->count("--r-steps")) cfg.r_steps = r_steps;
      if (!(cfg.r_min > 0.0) || cfg.r_max < cfg.r_min || cfg.r_steps < 2)
        throw valence::ValidationError("sweep: bad radius range");
    }
    const Out out(cfg.out_dir);

    if (verify->parsed()) { subname = "verify"; code = run_verify(cfg, out); }
    else if (construct->parsed()) { subname = "construct"; code = run_construct(cfg, out); }
    else if (eval->parsed()) { subname = "eval"; code = run_eval(cfg, out, parse_target(a_str)); }
    else if (count->parsed()) { subname = "count"; code = run_count(cfg, out, r, parse_target(a_str)); }
    else if (area->parsed()) { subname = "area"; code = run_area(cfg, out, r); }
    else if (sweep->parsed()) { subname = "sweep"; code = run_sweep(cfg, out); }
    else if (opt->parsed()) { subname = "optimize-c"; code = run_optimize_c(cfg, out); }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    write_manifest(out, subname, cfg, wall);
  } catch (const valence::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return code;
}
