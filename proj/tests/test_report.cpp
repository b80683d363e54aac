#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fmmbound/errors.hpp"
#include "fmmbound/report.hpp"

using namespace fmmbound;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fmmbound_report_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("json round trip") {
  const ConstantReport r = estimate_constant(Chain::m2l2l, {3, 5}, 6, 123, {.size_scale = 0.37});
  const ConstantReport back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
  CHECK(back == r);

  const fs::path path = scratch("one.json");
  write_report(r, path, ReportFormat::json);
  const auto read = read_reports_json(path);
  REQUIRE(read.size() == 1);
  CHECK(read.front() == r);

  const std::vector<ConstantReport> many{r, estimate_constant(Chain::s2l2l, {4}, 3, 9)};
  write_report(many, scratch("many.json"), ReportFormat::json);
  CHECK(read_reports_json(scratch("many.json")) == many);
}

TEST_CASE("json mirrors report field names") {
  const nlohmann::json j = report_to_json(estimate_constant(Chain::s2m2l, {3}, 2, 1));
  for (const char* key : {"chain", "orders", "samples", "max_ratio", "mean_ratio", "worst_sample", "seed"})
    CHECK(j.contains(key));
  CHECK(j.at("chain") == "S2M2L");
}

TEST_CASE("csv layout") {
  const std::vector<int> orders{3, 5, 10};
  const ConstantReport r = estimate_constant(Chain::s2l2l, orders, 4, 8);
  const fs::path path = scratch("table.csv");
  write_report(r, path, ReportFormat::csv);
  const std::string text = slurp(path);
  std::istringstream lines(text);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.back() == '\r');
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++rows;
  }
  CHECK(rows == static_cast<int>(orders.size() * orders.size()) + 1);
  CHECK(text.rfind("chain,p,q,samples,max_ratio,mean_ratio,seed\r\n", 0) == 0);
  CHECK(text.find("S2L2L,10,5,4,") != std::string::npos);
}

TEST_CASE("report bytes are deterministic") {
  for (ReportFormat f : {ReportFormat::csv, ReportFormat::json}) {
    write_report(estimate_constant(Chain::m2l2l, {3, 5}, 10, 31), scratch("a"), f);
    write_report(estimate_constant(Chain::m2l2l, {3, 5}, 10, 31), scratch("b"), f);
    CHECK(slurp(scratch("a")) == slurp(scratch("b")));
  }
}

TEST_CASE("csv numbers carry 17 significant digits") {
  ConstantReport r;
  r.cells.push_back({.p = 1, .q = 2, .samples = 3, .max_ratio = 0.1, .mean_ratio = 1.0 / 3.0});
  const std::string text = reports_to_csv({r});
  CHECK(text.find("0.10000000000000001,0.33333333333333331") != std::string::npos);
}

TEST_CASE("write errors name the path") {
  const fs::path bad = scratch("missing_dir") / "x" / "y.csv";
  try {
    write_report(ConstantReport{}, bad, ReportFormat::csv);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
}

TEST_CASE("experiment config") {
  const ExperimentConfig d = experiment_config_from_json(nlohmann::json::object());
  CHECK(d.chains.size() == 3);
  CHECK(d.orders == std::vector<int>{3, 5, 10});
  CHECK(d.samples_per_cell == 200);

  const auto j = nlohmann::json::parse(R"({"chains": ["S2M2L"], "orders": [3, 15], "samples_per_cell": 7,
      "seed": 99, "size_scale": 2.5, "output_path": "out.json", "format": "json"})");
  const ExperimentConfig c = experiment_config_from_json(j);
  CHECK(c.chains == std::vector<Chain>{Chain::s2m2l});
  CHECK(c.orders == std::vector<int>{3, 15});
  CHECK(c.samples_per_cell == 7);
  CHECK(c.seed == 99);
  CHECK(c.size_scale == 2.5);
  CHECK(c.output_path == fs::path("out.json"));
  CHECK(c.format == ReportFormat::json);

  for (const char* bad : {R"({"chains": []})", R"({"chains": ["X"]})", R"({"orders": [-1]})",
                          R"({"samples_per_cell": 0})", R"({"format": "xml"})", R"({"colour": 1})",
                          R"({"seed": "abc"})", R"([1, 2])"})
    CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(bad)), ConfigError);
  CHECK_THROWS_AS(load_experiment_config(scratch("nope.json")), ConfigError);
}
