#include "mapf/lns.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "mapf/validate.hpp"

namespace mapf {

AgentPaths to_agent_paths(const Solution& solution) {
  const size_t horizon = solution.configs.size();
  const size_t n = horizon == 0 ? 0 : solution.configs[0].size();
  AgentPaths paths(n, std::vector<VertexId>(horizon));
  for (size_t t = 0; t < horizon; ++t) {
    for (size_t i = 0; i < n; ++i) paths[i][t] = solution.configs[t][i];
  }
  return paths;
}

Solution to_solution(const AgentPaths& paths, std::span<const VertexId> goals) {
  size_t horizon = 1;
  for (const auto& p : paths) horizon = std::max(horizon, p.size());
  std::vector<Config> configs(horizon, Config(paths.size()));
  for (size_t t = 0; t < horizon; ++t) {
    for (size_t i = 0; i < paths.size(); ++i) {
      configs[t][i] = paths[i][std::min(t, paths[i].size() - 1)];
    }
  }
  Solution sol = make_solution(std::move(configs), goals);
  int32_t max_travel = 0;
  for (const int32_t tr : sol.travel) max_travel = std::max(max_travel, tr);
  sol.configs.resize(max_travel + 1);  // drop the tail where everyone rests
  return sol;
}

namespace {

// travel time of one path under the rest-at-goal flowtime definition
int64_t path_travel(const std::vector<VertexId>& path, VertexId goal) {
  for (size_t t = path.size(); t-- > 0;) {
    if (path[t] != goal) return static_cast<int64_t>(t) + 1;
  }
  return 0;
}

int64_t total_flowtime(const AgentPaths& paths, std::span<const VertexId> goals) {
  int64_t sum = 0;
  for (size_t i = 0; i < paths.size(); ++i) sum += path_travel(paths[i], goals[i]);
  return sum;
}

// dynamic obstacle tables for prioritized replanning
struct ObstacleTables {
  explicit ObstacleTables(int num_vertices) : nv(num_vertices) {}

  int64_t nv;
  std::unordered_set<int64_t> vertex_obs;            // t * nv + v
  std::unordered_set<int64_t> edge_obs;              // (t * nv + from) * nv + to
  std::unordered_map<VertexId, int> rest_from;       // goal vertex -> rest start
  std::unordered_map<VertexId, int> last_visit;      // vertex -> last occupancy time

  void add_path(const std::vector<VertexId>& path) {
    int last = static_cast<int>(path.size()) - 1;
    while (last > 0 && path[last - 1] == path[last]) --last;  // collapse final rest
    for (int t = 0; t <= last; ++t) {
      vertex_obs.insert(t * nv + path[t]);
      auto [it, fresh] = last_visit.emplace(path[t], t);
      if (!fresh) it->second = std::max(it->second, t);
    }
    for (int t = 0; t < last; ++t) {
      if (path[t] != path[t + 1]) {
        edge_obs.insert((t * nv + path[t]) * nv + path[t + 1]);
      }
    }
    rest_from.emplace(path[last], last);
  }

  bool vertex_blocked(VertexId v, int t) const {
    if (vertex_obs.count(t * nv + v)) return true;
    const auto it = rest_from.find(v);
    return it != rest_from.end() && t >= it->second;
  }
  // true when some fixed agent traverses to->from over step t -> t+1
  bool swap_blocked(VertexId from, VertexId to, int t) const {
    return edge_obs.count((t * nv + to) * nv + from) != 0;
  }
  int goal_free_time(VertexId goal) const {
    const auto it = last_visit.find(goal);
    return it == last_visit.end() ? 0 : it->second + 1;
  }
};

std::optional<std::vector<VertexId>> plan_single(const Graph& graph, VertexId start,
                                                 VertexId goal,
                                                 std::span<const uint16_t> goal_row,
                                                 int horizon, const ObstacleTables& obs) {
  struct Entry {
    int f;
    int t;
    VertexId v;
  };
  const auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return b.f < a.f;
    if (a.t != b.t) return a.t < b.t;  // deeper first
    return b.v < a.v;
  };
  const int64_t nv = graph.num_vertices();
  std::vector<Entry> heap;
  std::unordered_map<int64_t, VertexId> parent;  // state -> previous vertex
  const int goal_free = obs.goal_free_time(goal);

  const auto push = [&](VertexId v, int t, VertexId from) {
    if (parent.count(t * nv + v)) return;  // uniform step cost: first reach is best
    parent.emplace(t * nv + v, from);
    const int h = DistTable::hops(goal_row, v);
    if (h >= DistTable::kInfinity) return;
    heap.push_back({t + h, t, v});
    std::push_heap(heap.begin(), heap.end(), worse);
  };
  push(start, 0, kNoVertex);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Entry e = heap.back();
    heap.pop_back();
    if (e.v == goal && e.t >= goal_free) {
      std::vector<VertexId> path(e.t + 1);
      VertexId v = e.v;
      for (int t = e.t; t >= 0; --t) {
        path[t] = v;
        v = parent.at(t * nv + v);
      }
      return path;
    }
    if (e.t >= horizon) continue;
    const auto try_step = [&](VertexId u) {
      if (obs.vertex_blocked(u, e.t + 1)) return;
      if (u != e.v && obs.swap_blocked(e.v, u, e.t)) return;
      push(u, e.t + 1, e.v);
    };
    for (const VertexId u : graph.neighbors(e.v)) try_step(u);
    try_step(e.v);
  }
  return std::nullopt;
}

}  // namespace

std::optional<AgentPaths> pp_repair(std::span<const int> subset, const AgentPaths& paths,
                                    const Instance& instance, const DistTable& dist,
                                    std::mt19937& rng) {
  assert(!subset.empty());
  const Graph& graph = instance.graph;
  int makespan = 0;
  for (const auto& p : paths) makespan = std::max(makespan, static_cast<int>(p.size()) - 1);
  const int horizon = makespan + graph.num_vertices();

  std::vector<uint8_t> in_subset(paths.size(), 0);
  for (const int a : subset) in_subset[a] = 1;
  ObstacleTables obs(graph.num_vertices());
  for (size_t j = 0; j < paths.size(); ++j) {
    if (!in_subset[j]) obs.add_path(paths[j]);
  }

  std::vector<int> order(subset.begin(), subset.end());
  std::shuffle(order.begin(), order.end(), rng);

  std::unordered_map<int, std::vector<VertexId>> planned;
  for (const int agent : order) {
    auto path = plan_single(graph, instance.starts[agent], instance.goals[agent],
                            dist.table_for(instance.goals[agent]), horizon, obs);
    if (!path) return std::nullopt;
    obs.add_path(*path);
    planned.emplace(agent, std::move(*path));
  }
  AgentPaths result;
  result.reserve(subset.size());
  for (const int agent : subset) result.push_back(std::move(planned.at(agent)));
  return result;
}

RefineResult refine(const Solution& initial, const Instance& instance, const DistTable& dist,
                    Clock::time_point deadline, const RefineOptions& options) {
  RefineResult res;
  const int n = instance.num_agents;
  const auto t0 = Clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  AgentPaths incumbent = to_agent_paths(initial);
  int64_t incumbent_flowtime = total_flowtime(incumbent, instance.goals);
  res.trace.push_back({0, incumbent_flowtime, 0.0});

  std::mutex mutex;
  std::atomic<uint64_t> proposals{0};
  std::atomic<uint64_t> accepted{0};

  const auto worker = [&](int worker_id) {
    std::mt19937 rng(options.seed + 0x9e3779b9u * static_cast<uint32_t>(worker_id));
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    const int cap = std::min(options.max_subset, n);
    std::uniform_int_distribution<int> size_dist(1, cap);

    while (Clock::now() < deadline) {
      if (options.max_proposals != 0 && proposals.load() >= options.max_proposals) break;
      const uint64_t proposal_id = proposals.fetch_add(1) + 1;

      AgentPaths snapshot;
      {
        std::scoped_lock lock(mutex);
        snapshot = incumbent;
      }
      const int size = size_dist(rng);
      for (int k = 0; k < size; ++k) {
        std::uniform_int_distribution<int> pick(k, n - 1);
        std::swap(pool[k], pool[pick(rng)]);
      }
      const std::span<const int> subset(pool.data(), size);
      auto repaired = pp_repair(subset, snapshot, instance, dist, rng);
      if (!repaired) continue;

      std::scoped_lock lock(mutex);
      AgentPaths merged = incumbent;
      for (int k = 0; k < size; ++k) merged[subset[k]] = std::move((*repaired)[k]);
      Solution candidate = to_solution(merged, instance.goals);
      // the metrics routine is the only flowtime authority here
      const Metrics metrics = compute_metrics(instance, dist, candidate);
      if (options.workers > 1 && validate(instance, candidate).has_value()) {
        continue;  // stale proposal no longer compatible with the incumbent
      }
      if (metrics.flowtime < incumbent_flowtime) {
        incumbent = to_agent_paths(candidate);
        incumbent_flowtime = metrics.flowtime;
        accepted.fetch_add(1);
        res.trace.push_back({proposal_id, incumbent_flowtime, elapsed_ms()});
      }
    }
  };

  if (options.workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(options.workers);
    for (int w = 0; w < options.workers; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  res.proposals = proposals.load();
  res.accepted = accepted.load();
  res.solution = res.accepted == 0 ? initial : to_solution(incumbent, instance.goals);
  return res;
}

}  // namespace mapf
