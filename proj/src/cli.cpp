#include "fmmbound/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "fmmbound/bounds.hpp"
#include "fmmbound/errors.hpp"
#include "fmmbound/expansions.hpp"
#include "fmmbound/experiments.hpp"
#include "fmmbound/report.hpp"
#include "fmmbound/verify.hpp"

namespace fmmbound::cli {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string g17(double x) { return fmt("%.17g", x); }

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return value;
}

void check_orders(const std::vector<int>& orders, int max) {
  for (int p : orders)
    if (p < 0 || p > max)
      throw ConfigError("order " + std::to_string(p) + " outside [0, " + std::to_string(max) + "]");
}

struct BoundsArgs {
  double R = 0.0;
  double r = 0.0;
  std::optional<double> R2;
  std::optional<double> r2;
  double tf = 0.0;
  std::string p = "0..10";
  std::string format = "table";
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  std::optional<ChainGeometry> geometry;
  if (a.r2) {
    const double R2 = a.R2.value_or(a.R + *a.r2 - a.r);
    geometry.emplace(a.R, a.r, R2, *a.r2);
  } else {
    if (a.R2) throw ConfigError("--R2 requires --r2");
    geometry.emplace(a.R, a.r);
  }
  if (!(a.tf >= 0.0 && a.tf < max_target_confinement()))
    throw DomainError("--tf must satisfy 0 <= t_f < 2 sqrt(3) - 2");
  const std::vector<int> orders = parse_orders(a.p);
  check_orders(orders, 10000);
  const bool two = geometry->has_second_stage();
  if (a.format == "csv") {
    out << "p,s2l2l,s2m2l,m2l2l,gigaqbx\r\n";
    for (int p : orders)
      out << p << ',' << g17(bound_chain_s2l2l(*geometry, p)) << ','
          << g17(bound_chain_s2m2l(*geometry, p)) << ','
          << (two ? g17(bound_chain_m2l2l(*geometry, p)) : std::string()) << ','
          << g17(bound_gigaqbx({.p = p, .t_f = a.tf})) << "\r\n";
    return kExitOk;
  }
  out << "    p  S2L2L            S2M2L            M2L2L            GIGAQBX\n";
  for (int p : orders) {
    char row[160];
    std::snprintf(row, sizeof row, "%5d  %-15.9g  %-15.9g  %-15s  %-15.9g\n", p,
                  bound_chain_s2l2l(*geometry, p), bound_chain_s2m2l(*geometry, p),
                  two ? fmt("%.9g", bound_chain_m2l2l(*geometry, p)).c_str() : "-",
                  bound_gigaqbx({.p = p, .t_f = a.tf}));
    out << row;
  }
  return kExitOk;
}

int cmd_lebesgue(const std::string& p_text, int panels, const std::string& format,
                 std::ostream& out) {
  const std::vector<int> orders = parse_orders(p_text);
  check_orders(orders, kMaxDegree);
  if (panels < 64) throw ConfigError("--panels must be at least 64");
  const bool csv = format == "csv";
  out << (csv ? "p,lambda,asymptotic\r\n" : "    p  lambda        sqrt(8p/pi)\n");
  for (int p : orders) {
    const double exact = lebesgue_constant(p, panels);
    if (csv) {
      out << p << ',' << g17(exact) << ',' << (p >= 1 ? g17(lebesgue_asymptotic(p)) : "") << "\r\n";
    } else {
      char row[96];
      std::snprintf(row, sizeof row, "%5d  %-12.8f  %s\n", p, exact,
                    p >= 1 ? fmt("%.8f", lebesgue_asymptotic(p)).c_str() : "-");
      out << row;
    }
  }
  return kExitOk;
}

struct SampleArgs {
  std::string chain;
  std::uint64_t seed = 1;
  int p = 5;
  int q = 5;
  double scale = 1.0;
  std::string format = "table";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Chain chain = chain_from_string(a.chain);
  check_orders({a.p, a.q}, kMaxDegree / 2);
  if (!(a.scale > 0.0)) throw ConfigError("--scale must be positive");
  const ScenarioSample s = sample_scenario(chain, a.seed, a.scale);
  const double error = measure_error(s, a.p, a.q);
  const double bound = chain_bound(s, a.p);
  const double ratio = bound > 0.0 ? error / bound : 0.0;
  if (a.format == "json") {
    out << nlohmann::json{{"sample", sample_to_json(s)},
                          {"p", a.p},
                          {"q", a.q},
                          {"error", error},
                          {"bound", bound},
                          {"ratio", ratio}}
               .dump(2)
        << '\n';
  } else {
    out << "chain    " << to_string(chain) << '\n'
        << "seed     " << a.seed << '\n'
        << "R, r     " << g17(s.geometry.R()) << ", " << g17(s.geometry.r()) << '\n';
    if (s.geometry.has_second_stage())
      out << "R', r'   " << g17(s.geometry.second().separation) << ", "
          << g17(s.geometry.second().radius) << '\n';
    out << "p, q     " << a.p << ", " << a.q << '\n'
        << "error    " << g17(error) << '\n'
        << "bound    " << g17(bound) << '\n'
        << "ratio    " << fmt("%.6f", ratio) << '\n';
  }
  return ratio > kViolationSlack ? kExitFailure : kExitOk;
}

struct TableArgs {
  std::string config;
  std::string out_path;
  bool full_grid = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_experiment_config(a.config);
  if (a.full_grid) cfg.orders = kFullOrderGrid;
  if (a.seed) cfg.seed = *a.seed;
  if (a.samples) {
    if (*a.samples < 1) throw ConfigError("--samples must be >= 1");
    cfg.samples_per_cell = *a.samples;
  }
  if (!a.out_path.empty()) cfg.output_path = a.out_path;
  if (cfg.chains.empty()) throw ConfigError("no chains selected");

  std::vector<ConstantReport> reports;
  bool violated = false;
  for (Chain chain : cfg.chains) {
    reports.push_back(estimate_constant(chain, cfg.orders, cfg.samples_per_cell, cfg.seed,
                                        {.size_scale = cfg.size_scale}));
    const ConstantReport& r = reports.back();
    violated = violated || r.max_ratio > kViolationSlack;
    char line[200];
    std::snprintf(line, sizeof line,
                  "%-6s max_ratio=%.6f mean_ratio=%.6f worst_p=%d worst_q=%d samples=%d discarded=%d\n",
                  std::string(to_string(chain)).c_str(), r.max_ratio, r.mean_ratio, r.p, r.q,
                  r.samples, r.discarded);
    out << line;
  }
  if (cfg.output_path) write_report(reports, *cfg.output_path, cfg.format);
  return violated ? kExitFailure : kExitOk;
}

int cmd_verify(const std::string& level, std::uint64_t seed, std::ostream& out) {
  const auto results = run_verify(level == "full" ? VerifyLevel::full : VerifyLevel::quick, seed);
  int failed = 0;
  for (const PropertyResult& r : results) {
    char line[200];
    std::snprintf(line, sizeof line, "%s  %-32s worst=%-11.4g limit=%-9.3g cases=%d", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.worst, r.limit, r.cases);
    out << line;
    if (!r.detail.empty()) out << "  (" << r.detail << ')';
    out << '\n';
    failed += !r.passed;
  }
  if (failed) {
    out << failed << " propert" << (failed == 1 ? "y" : "ies") << " failed:";
    for (const PropertyResult& r : results)
      if (!r.passed) out << ' ' << r.name << ';';
    out << '\n';
    return kExitFailure;
  }
  out << "all " << results.size() << " properties passed\n";
  return kExitOk;
}

}  // namespace

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(text.substr(dots + 2));
    if (lo > hi) throw ConfigError("empty range '" + text + "'");
    for (int p = lo; p <= hi; ++p) out.push_back(p);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error bounds and experiments for FMM translation chains", "fmmbound"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Chain bounds and the GIGAQBX expression per order");
  b->add_option("--R", bounds.R, "Separation R")->required();
  b->add_option("--r", bounds.r, "Radius r")->required();
  b->add_option("--R2", bounds.R2, "Second-stage separation R' (default R + r' - r)");
  b->add_option("--r2", bounds.r2, "Second-stage radius r'");
  b->add_option("--tf", bounds.tf, "Target confinement factor")->capture_default_str();
  b->add_option("--p", bounds.p, "Orders: a..b or a,b,c")->capture_default_str();
  b->add_option("--format", bounds.format)->check(CLI::IsMember({"table", "csv"}))->capture_default_str();

  std::string leb_p = "0,1,2,3,5,10,20,50,100";
  int leb_panels = 64;
  std::string leb_format = "table";
  auto* l = app.add_subcommand("lebesgue", "Lebesgue constants and their asymptotic");
  l->add_option("--p", leb_p, "Orders: a..b or a,b,c")->capture_default_str();
  l->add_option("--panels", leb_panels, "Quadrature panels in theta")->capture_default_str();
  l->add_option("--format", leb_format)->check(CLI::IsMember({"table", "csv"}))->capture_default_str();

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Error and bound for one random geometry");
  s->add_option("--chain", sample.chain, "S2L2L, S2M2L or M2L2L")->required();
  s->add_option("--seed", sample.seed)->capture_default_str();
  s->add_option("--p", sample.p)->capture_default_str();
  s->add_option("--q", sample.q)->capture_default_str();
  s->add_option("--scale", sample.scale, "Size scale")->capture_default_str();
  s->add_option("--format", sample.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  TableArgs table;
  auto* t = app.add_subcommand("table", "Estimate the leading constant of each chain");
  t->add_option("--config", table.config, "JSON experiment config")->check(CLI::ExistingFile);
  t->add_option("--out", table.out_path, "Report path (overrides output_path)");
  t->add_flag("--full-grid", table.full_grid, "Use orders {3, 5, 10, 15, 20}");
  t->add_option("--seed", table.seed, "Override the config seed");
  t->add_option("--samples", table.samples, "Override samples_per_cell");

  std::string level = "quick";
  std::uint64_t verify_seed = 7;
  auto* v = app.add_subcommand("verify", "Run the property suites");
  v->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  v->add_option("--seed", verify_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*b) return cmd_bounds(bounds, out);
    if (*l) return cmd_lebesgue(leb_p, leb_panels, leb_format, out);
    if (*s) return cmd_sample(sample, out);
    if (*t) return cmd_table(table, out);
    if (*v) return cmd_verify(level, verify_seed, out);
  } catch (const std::exception& e) {
    err << "fmmbound: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fmmbound::cli
