#include "fmmbound/report.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fmmbound/errors.hpp"

namespace fmmbound {

using nlohmann::json;

std::string_view to_string(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "json"; }

ReportFormat report_format_from_string(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string(what) + ": " + ex.what());
  }
}

}  // namespace

json sample_to_json(const ScenarioSample& s) {
  json geometry = {{"R", s.geometry.R()}, {"r", s.geometry.r()}};
  if (s.geometry.has_second_stage()) {
    geometry["R2"] = s.geometry.second().separation;
    geometry["r2"] = s.geometry.second().radius;
  }
  json targets = json::array();
  for (const Vec3& t : s.targets) targets.push_back(vec_json(t));
  return {
      {"chain", std::string(to_string(s.chain))},
      {"geometry", std::move(geometry)},
      {"source", vec_json(s.source)},
      {"center", vec_json(s.center)},
      {"second_center", s.second_center ? vec_json(*s.second_center) : json(nullptr)},
      {"targets", std::move(targets)},
      {"weight", s.weight},
      {"seed", s.seed},
  };
}

ScenarioSample sample_from_json(const json& j) {
  return guarded("sample", [&] {
    ScenarioSample s;
    s.chain = chain_from_string(j.at("chain").get<std::string>());
    const json& g = j.at("geometry");
    s.geometry = g.contains("R2") ? ChainGeometry(g.at("R").get<double>(), g.at("r").get<double>(),
                                                  g.at("R2").get<double>(), g.at("r2").get<double>())
                                  : ChainGeometry(g.at("R").get<double>(), g.at("r").get<double>());
    s.source = vec_from(j.at("source"));
    s.center = vec_from(j.at("center"));
    if (!j.at("second_center").is_null()) s.second_center = vec_from(j.at("second_center"));
    for (const json& t : j.at("targets")) s.targets.push_back(vec_from(t));
    s.weight = j.at("weight").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
  });
}

json report_to_json(const ConstantReport& r) {
  json cells = json::array();
  for (const CellReport& c : r.cells)
    cells.push_back({{"p", c.p},
                     {"q", c.q},
                     {"samples", c.samples},
                     {"discarded", c.discarded},
                     {"max_ratio", c.max_ratio},
                     {"mean_ratio", c.mean_ratio},
                     {"worst_index", c.worst_index}});
  return {
      {"chain", std::string(to_string(r.chain))},
      {"orders", {r.p, r.q}},
      {"samples", r.samples},
      {"discarded", r.discarded},
      {"max_ratio", r.max_ratio},
      {"mean_ratio", r.mean_ratio},
      {"worst_sample", r.worst_sample ? sample_to_json(*r.worst_sample) : json(nullptr)},
      {"seed", r.seed},
      {"size_scale", r.size_scale},
      {"cells", std::move(cells)},
  };
}

ConstantReport report_from_json(const json& j) {
  return guarded("report", [&] {
    ConstantReport r;
    r.chain = chain_from_string(j.at("chain").get<std::string>());
    const json& orders = j.at("orders");
    if (!orders.is_array() || orders.size() != 2) throw ConfigError("report: orders must be [p, q]");
    r.p = orders[0].get<int>();
    r.q = orders[1].get<int>();
    r.samples = j.at("samples").get<int>();
    r.discarded = j.at("discarded").get<int>();
    r.max_ratio = j.at("max_ratio").get<double>();
    r.mean_ratio = j.at("mean_ratio").get<double>();
    if (!j.at("worst_sample").is_null()) r.worst_sample = sample_from_json(j.at("worst_sample"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.size_scale = j.at("size_scale").get<double>();
    for (const json& c : j.at("cells"))
      r.cells.push_back({.p = c.at("p").get<int>(),
                         .q = c.at("q").get<int>(),
                         .samples = c.at("samples").get<int>(),
                         .discarded = c.at("discarded").get<int>(),
                         .max_ratio = c.at("max_ratio").get<double>(),
                         .mean_ratio = c.at("mean_ratio").get<double>(),
                         .worst_index = c.at("worst_index").get<int>()});
    return r;
  });
}

std::string reports_to_csv(const std::vector<ConstantReport>& reports) {
  std::ostringstream out;
  out << "chain,p,q,samples,max_ratio,mean_ratio,seed\r\n";
  for (const ConstantReport& r : reports)
    for (const CellReport& c : r.cells)
      out << to_string(r.chain) << ',' << c.p << ',' << c.q << ',' << c.samples << ','
          << g17(c.max_ratio) << ',' << g17(c.mean_ratio) << ',' << r.seed << "\r\n";
  return out.str();
}

std::string reports_to_json_text(const std::vector<ConstantReport>& reports) {
  json doc;
  if (reports.size() == 1) {
    doc = report_to_json(reports.front());
  } else {
    doc = {{"reports", json::array()}};
    for (const ConstantReport& r : reports) doc["reports"].push_back(report_to_json(r));
  }
  return doc.dump(2) + "\n";
}

void write_report(const ConstantReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  write_report(std::vector<ConstantReport>{report}, path, format);
}

void write_report(const std::vector<ConstantReport>& reports, const std::filesystem::path& path,
                  ReportFormat format) {
  const std::string text =
      format == ReportFormat::csv ? reports_to_csv(reports) : reports_to_json_text(reports);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open report file " + path.string());
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing report file " + path.string());
}

std::vector<ConstantReport> read_reports_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report file " + path.string());
  const json doc = guarded("report file", [&] { return json::parse(in); });
  std::vector<ConstantReport> out;
  if (doc.is_object() && doc.contains("reports")) {
    for (const json& r : doc.at("reports")) out.push_back(report_from_json(r));
  } else {
    out.push_back(report_from_json(doc));
  }
  return out;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known{"chains", "orders", "samples_per_cell", "seed",
                                           "size_scale", "output_path", "format"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw ConfigError("config: unknown key '" + item.key() + "'");
  return guarded("config", [&] {
    ExperimentConfig cfg;
    if (j.contains("chains")) {
      cfg.chains.clear();
      for (const json& c : j.at("chains")) cfg.chains.push_back(chain_from_string(c.get<std::string>()));
      if (cfg.chains.empty()) throw ConfigError("config: chain list is empty");
    }
    if (j.contains("orders")) {
      cfg.orders = j.at("orders").get<std::vector<int>>();
      if (cfg.orders.empty()) throw ConfigError("config: order list is empty");
      for (int p : cfg.orders)
        if (p < 0 || p > 60) throw ConfigError("config: orders must lie in [0, 60]");
    }
    if (j.contains("samples_per_cell")) {
      cfg.samples_per_cell = j.at("samples_per_cell").get<int>();
      if (cfg.samples_per_cell < 1) throw ConfigError("config: samples_per_cell must be >= 1");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("size_scale")) {
      cfg.size_scale = j.at("size_scale").get<double>();
      if (!(cfg.size_scale > 0.0)) throw ConfigError("config: size_scale must be positive");
    }
    if (j.contains("output_path") && !j.at("output_path").is_null())
      cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("format")) cfg.format = report_format_from_string(j.at("format").get<std::string>());
    return cfg;
  });
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  const json doc = guarded("config file", [&] { return json::parse(in); });
  return experiment_config_from_json(doc);
}

}  // namespace fmmbound
