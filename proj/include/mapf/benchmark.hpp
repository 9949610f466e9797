/*
 * benchmark harness: solver matrices over map/scenario files, CSV results,
 * heatmap exports
 */
#pragma once

#include <string>
#include <vector>

#include "mapf/lacam.hpp"
#include "mapf/lns.hpp"

namespace mapf {

struct RunConfig {
  std::string map_path;
  std::vector<std::string> scen_paths;
  std::vector<int> agent_counts;
  GuidanceMode mode = GuidanceMode::None;
  int window = 20;
  double alpha = 3.0;
  int iterations = 1;
  int guidance_period = 1;
  uint32_t seed = 0;
  int time_limit_ms = 30000;
  bool anytime = false;
  int workers = 1;
  int jobs = 1;  // instances solved in parallel; each solve stays single-threaded
  uint64_t node_budget = 0;
  SuoParams suo;
  std::string out_csv;         // results table
  std::string solution_path;   // per-instance solution file (.json or .txt)
  std::string heatmap_prefix;  // per-instance visit-count grid + histogram CSVs
  std::string trace_path;      // per-instance LNS improvement trace CSV
};

struct RunRow {
  std::string map;
  int scen_index = 0;
  int agents = 0;
  std::string mode;
  int window = 0;
  double alpha = 0.0;
  uint32_t seed = 0;
  bool solved = false;
  int64_t flowtime = 0;
  int64_t lower_bound = 0;
  double ratio = 0.0;
  double runtime_ms = 0.0;
  std::string error;  // per-instance failure note, not part of the CSV
};

struct BenchResult {
  std::vector<RunRow> rows;
  int validation_failures = 0;
};

std::string csv_header();
std::string csv_row(const RunRow& row);

// Runs the full (scenario x agent-count) matrix. Per-instance failures
// become unsolved rows; only configuration errors (unreadable map, bad
// paths) throw.
BenchResult run_benchmark(const RunConfig& config);

}  // namespace mapf
