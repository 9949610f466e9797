/*
 * benchmark CLI: solve matrices of MAPF instances, validate solutions,
 * export CSV results / heatmaps / solution files
 */
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mapf/benchmark.hpp"
#include "mapf/solution_io.hpp"
#include "mapf/validate.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mapf::ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int validate_only(const std::string& solution_path, const std::string& map_path,
                  const std::string& scen_path) {
  const mapf::Graph graph = mapf::Graph::parse_map(read_file(map_path));
  std::ifstream in(solution_path);
  if (!in) throw mapf::ParseError("cannot read file: " + solution_path);
  const bool json = std::filesystem::path(solution_path).extension() == ".json";
  const mapf::SolutionFile file =
      json ? mapf::read_solution_json(in) : mapf::read_solution_text(in);
  const mapf::Instance instance = mapf::Instance::parse_scenario(
      read_file(scen_path), graph, static_cast<int>(file.paths.size()));
  const mapf::Solution solution = mapf::solution_from_file(file, instance);
  if (const auto violation = mapf::validate(instance, solution)) {
    std::cout << "invalid: " << violation->message << "\n";
    return 1;
  }
  mapf::DistTable dist(instance.graph);
  const mapf::Metrics metrics = mapf::compute_metrics(instance, dist, solution);
  std::cout << "valid: flowtime=" << metrics.flowtime << " lb=" << metrics.lower_bound
            << " ratio=" << metrics.ratio << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAPF benchmark harness (LaCAM + guidance + anytime LNS)"};

  mapf::RunConfig config;
  std::string scen_list;
  std::string agents_list = "1";
  std::string guidance = "none";
  std::string validate_file;
  config.workers = 1;

  app.add_option("--map", config.map_path, "map file (MovingAI .map)")->required();
  app.add_option("--scen", scen_list, "scenario file(s), comma separated");
  app.add_option("--agents", agents_list, "agent count(s), comma separated");
  app.add_option("--guidance", guidance, "guidance mode: none|global|local|both");
  app.add_option("--window", config.window, "guidance window length");
  app.add_option("--alpha", config.alpha, "collision penalty weight");
  app.add_option("--iterations", config.iterations, "guidance planning sweeps per build");
  app.add_option("--guidance-period", config.guidance_period,
                 "rebuild guidance every k-th generation (study flag)");
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--time-limit-ms", config.time_limit_ms, "per-instance budget");
  app.add_flag("--anytime", config.anytime, "refine solutions by LNS until the deadline");
  app.add_option("--workers", config.workers, "concurrent LNS proposal loops");
  app.add_option("--jobs", config.jobs, "instances run in parallel");
  app.add_option("--node-budget", config.node_budget, "cap on generated search nodes");
  app.add_option("--suo-passes", config.suo.passes, "global guidance optimization passes");
  app.add_option("--suo-beta", config.suo.beta, "global guidance congestion weight");
  app.add_option("--out", config.out_csv, "results CSV path");
  app.add_option("--solution", config.solution_path, "solution output (.json or .txt)");
  app.add_option("--heatmap", config.heatmap_prefix, "vertex-usage heatmap CSV prefix");
  app.add_option("--trace", config.trace_path, "LNS improvement trace CSV");
  app.add_option("--validate-only", validate_file,
                 "validate an existing solution file against --map/--scen and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto split = [](const std::string& list) {
      std::vector<std::string> parts;
      std::istringstream in(list);
      std::string part;
      while (std::getline(in, part, ',')) {
        if (!part.empty()) parts.push_back(part);
      }
      return parts;
    };

    if (!validate_file.empty()) {
      const auto scens = split(scen_list);
      if (scens.size() != 1) {
        std::cerr << "--validate-only needs exactly one --scen\n";
        return 2;
      }
      return validate_only(validate_file, config.map_path, scens[0]);
    }

    config.scen_paths = split(scen_list);
    for (const auto& field : split(agents_list)) {
      config.agent_counts.push_back(std::stoi(field));
    }
    const auto mode = mapf::guidance_mode_from(guidance);
    if (!mode) {
      std::cerr << "unknown guidance mode: " << guidance << "\n";
      return 2;
    }
    config.mode = *mode;

    const mapf::BenchResult result = mapf::run_benchmark(config);
    std::cout << mapf::csv_header() << "\n";
    for (const auto& row : result.rows) {
      std::cout << mapf::csv_row(row) << "\n";
      if (!row.error.empty()) std::cerr << "# note: " << row.error << "\n";
    }
    if (result.validation_failures > 0) {
      std::cerr << result.validation_failures << " solution(s) failed validation\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
