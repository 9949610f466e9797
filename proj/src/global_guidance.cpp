#include "mapf/global_guidance.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace mapf {

namespace {

// Deterministic least-cost search with per-vertex entry cost
// 1 + beta * usage(v). With all-zero usage this is a plain BFS shortest
// path. Ties resolved by (cost, vertex id).
std::vector<VertexId> replan_one(const Graph& g, VertexId start, VertexId goal,
                                 const std::vector<int32_t>& usage, double beta) {
  const int nv = g.num_vertices();
  std::vector<double> cost(nv, -1.0);
  std::vector<VertexId> parent(nv, kNoVertex);
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  cost[start] = 0.0;
  open.emplace(0.0, start);
  while (!open.empty()) {
    const auto [c, v] = open.top();
    open.pop();
    if (c > cost[v]) continue;  // stale
    if (v == goal) break;
    for (const VertexId u : g.neighbors(v)) {
      const double cu = c + 1.0 + beta * usage[u];
      if (cost[u] < 0.0 || cu < cost[u]) {
        cost[u] = cu;
        parent[u] = v;
        open.emplace(cu, u);
      }
    }
  }
  if (cost[goal] < 0.0) throw std::runtime_error("global guidance: goal unreachable");
  std::vector<VertexId> path;
  for (VertexId v = goal; v != kNoVertex; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  assert(path.front() == start);
  return path;
}

}  // namespace

GlobalGuidance GlobalGuidance::build_suo(const Instance& instance, const SuoParams& params) {
  const Graph& g = instance.graph;
  const int n = instance.num_agents;
  std::vector<int32_t> usage(g.num_vertices(), 0);
  std::vector<std::vector<VertexId>> paths(n);

  for (int i = 0; i < n; ++i) {
    paths[i] = replan_one(g, instance.starts[i], instance.goals[i], usage, 0.0);
    for (const VertexId v : paths[i]) ++usage[v];
  }
  for (int pass = 0; pass < params.passes; ++pass) {
    for (int i = 0; i < n; ++i) {
      for (const VertexId v : paths[i]) --usage[v];  // own path excluded
      paths[i] = replan_one(g, instance.starts[i], instance.goals[i], usage, params.beta);
      for (const VertexId v : paths[i]) ++usage[v];
    }
  }
  return from_paths(g, std::move(paths));
}

GlobalGuidance GlobalGuidance::from_paths(const Graph& graph,
                                          std::vector<std::vector<VertexId>> paths) {
  GlobalGuidance gg;
  gg.graph_ = &graph;
  gg.paths_ = std::move(paths);
  gg.position_.resize(gg.paths_.size());
  gg.delta_.resize(gg.paths_.size());
  for (size_t i = 0; i < gg.paths_.size(); ++i) {
    const auto& p = gg.paths_[i];
    if (p.empty()) throw std::invalid_argument("global guidance path must be nonempty");
    for (size_t k = 0; k + 1 < p.size(); ++k) {
      const auto& nbrs = graph.neighbors(p[k]);
      if (!std::binary_search(nbrs.begin(), nbrs.end(), p[k + 1])) {
        throw std::invalid_argument("global guidance path breaks adjacency");
      }
    }
    for (size_t k = 0; k < p.size(); ++k) {
      gg.position_[i].emplace(p[k], static_cast<int32_t>(k));  // first occurrence wins
    }
  }
  return gg;
}

std::span<const uint16_t> GlobalGuidance::delta_table(int agent) const {
  {
    std::shared_lock lock(mutex_);
    if (delta_[agent]) return *delta_[agent];
  }
  std::unique_lock lock(mutex_);
  if (delta_[agent]) return *delta_[agent];

  auto table = std::make_unique<std::vector<uint16_t>>(graph_->num_vertices(),
                                                       DistTable::kUnreachable);
  std::vector<VertexId> queue;
  for (const VertexId v : paths_[agent]) {
    if ((*table)[v] != 0) {
      (*table)[v] = 0;
      queue.push_back(v);
    }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    const uint16_t d = (*table)[v];
    for (const VertexId u : graph_->neighbors(v)) {
      if ((*table)[u] == DistTable::kUnreachable) {
        (*table)[u] = static_cast<uint16_t>(d + 1);
        queue.push_back(u);
      }
    }
  }
  delta_[agent] = std::move(table);
  return *delta_[agent];
}

VertexId GlobalGuidance::next_on_path(int agent, VertexId v) const {
  const auto& pos = position_[agent];
  const auto it = pos.find(v);
  if (it == pos.end()) return kNoVertex;
  const auto& p = paths_[agent];
  const size_t k = static_cast<size_t>(it->second);
  return k + 1 < p.size() ? p[k + 1] : p.back();
}

void GlobalGuidance::dump(std::ostream& out) const {
  for (size_t i = 0; i < paths_.size(); ++i) {
    out << i << ':';
    for (size_t k = 0; k < paths_[i].size(); ++k) {
      const auto [x, y] = graph_->coord(paths_[i][k]);
      out << (k ? "," : "") << '(' << x << ',' << y << ')';
    }
    out << '\n';
  }
}

}  // namespace mapf
