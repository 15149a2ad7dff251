#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "drgtet/graph.hpp"

namespace drgtet {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Names accepted in PipelineConfig::checks.
const std::vector<std::string>& all_checks();

struct PipelineConfig {
  /// Either a family ("bilinear", "hermitean", "alternating") with params,
  /// or a graph file.
  std::string family;
  std::vector<int64_t> params;
  std::string graph_file;
  std::size_t base_vertex = 0;
  bool negative_root = false;
  bool float_mode = false;
  std::set<std::string> checks;  ///< empty means all
  uint64_t seed = 1;
  std::size_t threads = 0;  ///< 0 keeps the current setting
  std::size_t pattern_pairs = 100000;
  bool timings = true;

  [[nodiscard]] bool wants(const std::string& check) const { return checks.empty() || checks.count(check) > 0; }
  [[nodiscard]] nlohmann::json to_json() const;
};

struct PipelineResult {
  nlohmann::json report;
  /// Identifiers of failed theorem-level checks and stage errors.
  std::vector<std::string> hard_failures;
  [[nodiscard]] bool ok() const { return hard_failures.empty(); }
};

/// Builds a graph from a family name and its parameters:
/// bilinear (s, d, e), hermitean (r, d), alternating (s, n).
/// Throws std::invalid_argument for an unknown family or wrong arity.
GraphData build_family(const std::string& family, const std::vector<int64_t>& params);

/// Runs the selected stages in dependency order and assembles the report.
/// Stage errors are recorded in the report rather than thrown.
PipelineResult run_pipeline(const PipelineConfig& cfg);
/// Same, on an already constructed graph.
PipelineResult run_pipeline(const PipelineConfig& cfg, GraphData graph);

/// Human-readable rendering of a report; format is "summary" or "full".
/// Throws std::invalid_argument for a malformed report.
std::string render_report(const nlohmann::json& report, const std::string& format);

}  // namespace drgtet
