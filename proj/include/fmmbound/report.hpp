#pragma once

// Report files and experiment configuration.
//
// CSV: header chain,p,q,samples,max_ratio,mean_ratio,seed and one row per
// (chain, p, q) cell. JSON: one object per report with the ConstantReport
// field names; several reports are wrapped as {"reports": [...]}.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fmmbound/experiments.hpp"

namespace fmmbound {

enum class ReportFormat { csv, json };

std::string_view to_string(ReportFormat f);
/// Throws ConfigError for anything but "csv" or "json".
ReportFormat report_format_from_string(std::string_view name);

nlohmann::json sample_to_json(const ScenarioSample& s);
ScenarioSample sample_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ConstantReport& r);
/// Throws ConfigError on a malformed document.
ConstantReport report_from_json(const nlohmann::json& j);

std::string reports_to_csv(const std::vector<ConstantReport>& reports);
std::string reports_to_json_text(const std::vector<ConstantReport>& reports);

/// Throws std::runtime_error naming the path when the file cannot be written.
void write_report(const ConstantReport& report, const std::filesystem::path& path,
                  ReportFormat format);
void write_report(const std::vector<ConstantReport>& reports, const std::filesystem::path& path,
                  ReportFormat format);

/// Reads a JSON report file written by write_report.
std::vector<ConstantReport> read_reports_json(const std::filesystem::path& path);

struct ExperimentConfig {
  std::vector<Chain> chains{Chain::s2l2l, Chain::s2m2l, Chain::m2l2l};
  std::vector<int> orders{3, 5, 10};
  int samples_per_cell = 200;
  std::uint64_t seed = 20190401;
  double size_scale = 1.0;
  std::optional<std::filesystem::path> output_path;
  ReportFormat format = ReportFormat::csv;
};

inline const std::vector<int> kFullOrderGrid{3, 5, 10, 15, 20};

/// Keys: chains, orders, samples_per_cell, seed, size_scale, output_path,
/// format. Missing keys keep their defaults; unknown keys and invalid values
/// throw ConfigError.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace fmmbound
