#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fmmbound/bounds.hpp"
#include "fmmbound/cli.hpp"
#include "fmmbound/errors.hpp"
#include "fmmbound/expansions.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "fmmbound");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fmmbound::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find("\r\n", pos);
    REQUIRE(end != std::string::npos);
    std::vector<std::string> fields;
    std::string line = text.substr(pos, end - pos), cell;
    std::istringstream s(line);
    while (std::getline(s, cell, ',')) fields.push_back(cell);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
    pos = end + 2;
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fmmbound_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("order parsing") {
  using fmmbound::cli::parse_orders;
  CHECK(parse_orders("3..5") == std::vector<int>{3, 4, 5});
  CHECK(parse_orders("3,5,10") == std::vector<int>{3, 5, 10});
  CHECK(parse_orders("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_orders("5..3"), fmmbound::ConfigError);
  CHECK_THROWS_AS(parse_orders("a"), fmmbound::ConfigError);
  CHECK_THROWS_AS(parse_orders("3,,4"), fmmbound::ConfigError);
}

TEST_CASE("bounds command") {
  const Outcome o = run({"bounds", "--R", "2", "--r", "1", "--p", "3..3"});
  CHECK(o.code == 0);
  CHECK(o.out.find("0.0625") != std::string::npos);

  const Outcome csv = run({"bounds", "--R", "2", "--r", "1", "--r2", "0.5", "--p", "0..6", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = parse_csv(csv.out);
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) CHECK(row.size() == 5);
  const fmmbound::ChainGeometry g(2, 1, 1.5, 0.5);
  CHECK(std::stod(rows[4][0]) == 3);
  CHECK(std::stod(rows[4][1]) == 0.0625);
  CHECK(std::stod(rows[4][3]) == fmmbound::bound_chain_m2l2l(g, 3));
  CHECK(std::stod(rows[4][4]) == fmmbound::bound_gigaqbx({.p = 3}));

  CHECK(run({"bounds", "--R", "1", "--r", "1"}).code == 2);
  CHECK(run({"bounds", "--R", "2", "--r", "1", "--tf", "1.5"}).code == 2);
  CHECK(run({"bounds", "--R", "2", "--r", "1", "--p", "x"}).code == 2);
  CHECK(run({"bounds", "--R", "2"}).code == 2);
  CHECK(run({"bounds", "--R", "2", "--r", "1", "--bogus"}).code == 2);
}

TEST_CASE("lebesgue command") {
  const Outcome o = run({"lebesgue", "--p", "0,1,100", "--format", "csv"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::stod(rows[2][1]) - 5.0 / 3.0) < 1e-7);
  const double exact = std::stod(rows[3][1]), asym = std::stod(rows[3][2]);
  CHECK(std::abs(asym - exact) / exact < 0.15);
  const Outcome table = run({"lebesgue", "--p", "1"});
  CHECK(table.out.find("1.66666667") != std::string::npos);
}

TEST_CASE("sample command") {
  const Outcome a = run({"sample", "--chain", "S2M2L", "--seed", "5", "--p", "6", "--q", "3"});
  const Outcome b = run({"sample", "--chain", "S2M2L", "--seed", "5", "--p", "6", "--q", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("ratio") != std::string::npos);
  const Outcome j = run({"sample", "--chain", "M2L2L", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).contains("ratio"));
  CHECK(run({"sample", "--chain", "XYZ"}).code == 2);
}

TEST_CASE("table command") {
  const Outcome a = run({"table", "--samples", "20"});
  const Outcome b = run({"table", "--samples", "20"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto at = line.find("max_ratio=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(line.substr(at + 10)) <= 1.02);
    ++count;
  }
  CHECK(count == 3);

  const fs::path cfg = scratch("cfg.json");
  const fs::path out = scratch("report.csv");
  std::ofstream(cfg) << R"({"chains": ["S2L2L", "M2L2L"], "orders": [3, 5], "samples_per_cell": 5, "seed": 3})";
  const Outcome c = run({"table", "--config", cfg.string(), "--out", out.string()});
  CHECK(c.code == 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(parse_csv(text).size() == 2 * 4 + 1);

  const fs::path empty = scratch("empty.json");
  std::ofstream(empty) << R"({"chains": []})";
  CHECK(run({"table", "--config", empty.string()}).code == 2);
  const fs::path unknown = scratch("unknown.json");
  std::ofstream(unknown) << R"({"chain": ["S2L2L"]})";
  CHECK(run({"table", "--config", unknown.string()}).code == 2);
  CHECK(run({"table", "--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("verify command") {
  const auto start = std::chrono::steady_clock::now();
  const Outcome o = run({"verify", "--level", "quick"});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(o.code == 0);
  CHECK(seconds < 60.0);
  CHECK(o.out.find("FAIL") == std::string::npos);
  CHECK(o.out.find("addition theorem") != std::string::npos);
  CHECK(run({"verify", "--level", "medium"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
