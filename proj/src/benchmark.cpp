#include "mapf/benchmark.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mapf/solution_io.hpp"
#include "mapf/validate.hpp"

namespace mapf {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string map_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// "out.csv" -> "out_s3_n400.csv" when the matrix has several items
std::string suffixed(const std::string& path, int scen_index, int agents, bool multiple) {
  if (!multiple) return path;
  std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "_s" + std::to_string(scen_index) + "_n" + std::to_string(agents) + ext;
}

void write_heatmap(const std::string& prefix, const Instance& instance, const Metrics& metrics) {
  const Graph& g = instance.graph;
  {
    std::ofstream out(prefix + "_visits.csv");
    for (int y = 0; y < g.height; ++y) {
      for (int x = 0; x < g.width; ++x) {
        const VertexId v = g.vertex_at(x, y);
        out << (x ? "," : "") << (v == kNoVertex ? 0 : metrics.visits[v]);
      }
      out << '\n';
    }
  }
  {
    std::map<int64_t, int64_t> histogram;
    for (const int64_t count : metrics.visits) ++histogram[count];
    std::ofstream out(prefix + "_histogram.csv");
    out << "visits,vertices\n";
    for (const auto& [visits, vertices] : histogram) {
      out << visits << ',' << vertices << '\n';
    }
  }
}

}  // namespace

std::string csv_header() {
  return "map,scen,n,mode,window,alpha,seed,solved,flowtime,lb,ratio,runtime_ms";
}

std::string csv_row(const RunRow& r) {
  std::ostringstream out;
  out << r.map << ',' << r.scen_index << ',' << r.agents << ',' << r.mode << ',' << r.window
      << ',' << r.alpha << ',' << r.seed << ',' << (r.solved ? 1 : 0) << ',' << r.flowtime << ','
      << r.lower_bound << ',' << std::setprecision(6) << std::fixed << r.ratio << ','
      << std::setprecision(3) << r.runtime_ms;
  return out.str();
}

BenchResult run_benchmark(const RunConfig& config) {
  if (config.scen_paths.empty() || config.agent_counts.empty()) {
    throw ParseError("benchmark needs at least one scenario and one agent count");
  }
  const Graph graph = Graph::parse_map(read_file(config.map_path));
  const std::string map_name = map_stem(config.map_path);

  struct Item {
    int scen_index;
    int agents;
    std::string scen_text;
  };
  std::vector<Item> items;
  for (size_t s = 0; s < config.scen_paths.size(); ++s) {
    const std::string text = read_file(config.scen_paths[s]);
    for (const int n : config.agent_counts) {
      items.push_back({static_cast<int>(s), n, text});
    }
  }
  const bool multiple = items.size() > 1;

  BenchResult result;
  result.rows.resize(items.size());
  std::atomic<size_t> next_item{0};
  std::atomic<int> validation_failures{0};
  std::mutex io_mutex;

  const auto run_item = [&](const Item& item, RunRow& row) {
    row.map = map_name;
    row.scen_index = item.scen_index;
    row.agents = item.agents;
    row.mode = to_string(config.mode);
    row.window = config.window;
    row.alpha = config.alpha;
    row.seed = config.seed;
    try {
      Instance instance = Instance::parse_scenario(item.scen_text, graph, item.agents);
      DistTable dist(instance.graph);

      SolverOptions options;
      options.guidance = config.mode;
      options.window = config.window;
      options.alpha = config.alpha;
      options.iterations = config.iterations;
      options.guidance_period = config.guidance_period;
      options.node_budget = config.node_budget;
      options.suo = config.suo;
      options.seed = config.seed;

      const auto t0 = Clock::now();
      const auto deadline = t0 + std::chrono::milliseconds(config.time_limit_ms);
      SolveResult solved = solve(instance, dist, options, deadline);
      RefineResult refined;
      const bool use_refined = config.anytime && solved.status == SolveStatus::Solved;
      if (use_refined) {
        RefineOptions ropts;
        ropts.workers = config.workers;
        ropts.seed = config.seed;
        refined = refine(solved.solution, instance, dist, deadline, ropts);
      }
      const Solution& solution = use_refined ? refined.solution : solved.solution;
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

      Metrics metrics;
      if (solved.status == SolveStatus::Solved) {
        if (const auto violation = validate(instance, solution)) {
          validation_failures.fetch_add(1);
          row.error = "validation failed: " + violation->message;
          return;
        }
        metrics = compute_metrics(instance, dist, solution);
        row.solved = true;
        row.flowtime = metrics.flowtime;
        row.lower_bound = metrics.lower_bound;
        row.ratio = metrics.ratio;
      } else {
        for (int i = 0; i < instance.num_agents; ++i) {
          row.lower_bound += dist.dist(instance.starts[i], instance.goals[i]);
        }
        row.error = solved.status == SolveStatus::Timeout ? "timeout" : "unsolvable";
        return;
      }

      std::scoped_lock lock(io_mutex);
      if (!config.solution_path.empty()) {
        const std::string path =
            suffixed(config.solution_path, item.scen_index, item.agents, multiple);
        const SolutionFile file =
            to_solution_file(instance, solution, map_name, config.seed);
        std::ofstream out(path);
        if (std::filesystem::path(path).extension() == ".json") {
          write_solution_json(out, file);
        } else {
          write_solution_text(out, file);
        }
      }
      if (!config.heatmap_prefix.empty()) {
        write_heatmap(suffixed(config.heatmap_prefix, item.scen_index, item.agents, multiple),
                      instance, metrics);
      }
      if (!config.trace_path.empty() && use_refined) {
        std::ofstream out(
            suffixed(config.trace_path, item.scen_index, item.agents, multiple));
        out << "proposal,flowtime,elapsed_ms\n";
        for (const auto& point : refined.trace) {
          out << point.proposal << ',' << point.flowtime << ',' << std::setprecision(3)
              << std::fixed << point.elapsed_ms << '\n';
        }
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (size_t k = 0; k < items.size(); ++k) run_item(items[k], result.rows[k]);
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) {
      threads.emplace_back([&] {
        for (size_t k = next_item.fetch_add(1); k < items.size(); k = next_item.fetch_add(1)) {
          run_item(items[k], result.rows[k]);
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  result.validation_failures = validation_failures.load();

  if (!config.out_csv.empty()) {
    std::ofstream out(config.out_csv);
    out << csv_header() << '\n';
    for (const auto& row : result.rows) out << csv_row(row) << '\n';
  }
  return result;
}

}  // namespace mapf
