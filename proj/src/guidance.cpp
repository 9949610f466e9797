#include "mapf/guidance.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace mapf {

void Guidance::set_path(int agent, std::span<const VertexId> p) {
  assert(static_cast<int>(p.size()) == window_ + 1);
  std::copy(p.begin(), p.end(), slot(agent).begin());
}

void Guidance::clear_path(int agent) { slot(agent)[0] = kNoVertex; }

Guidance init_guidance(const Config& q, const Guidance* prev, int num_agents, int window) {
  Guidance phi(num_agents, window);
  if (prev == nullptr || !prev->initialized()) return phi;
  assert(prev->num_agents() == num_agents && prev->window() == window);
  std::vector<VertexId> buf(window + 1);
  for (int i = 0; i < num_agents; ++i) {
    const auto p = prev->path(i);
    if (p.empty() || q[i] != p[1]) continue;  // agent deviated: start over
    for (int t = 0; t < window; ++t) buf[t] = p[t + 1];
    buf[window] = p[window];  // pad with a wait
    phi.set_path(i, buf);
    phi.set_collision_count(i, prev->collision_count(i));
  }
  return phi;
}

int count_collisions(VertexId from, VertexId to, int t, const Guidance& phi, int self) {
  assert(0 <= t && t < phi.window());
  int chi = 0;
  for (int j = 0; j < phi.num_agents(); ++j) {
    if (j == self) continue;
    const auto p = phi.path(j);
    if (p.empty()) continue;
    if (p[t + 1] == to) ++chi;                                    // vertex
    if (from != to && p[t] == to && p[t + 1] == from) ++chi;      // swap
  }
  return chi;
}

std::vector<int> order_agents(const Guidance& phi) {
  std::vector<int> order(phi.num_agents());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&phi](int a, int b) {
    const int ca = phi.collision_count(a), cb = phi.collision_count(b);
    return ca != cb ? ca > cb : a < b;
  });
  return order;
}

GuidanceBuilder::GuidanceBuilder(const Graph& graph, const DistTable& dist,
                                 std::span<const VertexId> goals, const GuidanceParams& params,
                                 const GlobalGuidance* global)
    : graph_(&graph),
      dist_(&dist),
      goals_(goals.begin(), goals.end()),
      params_(params),
      global_(params.use_global ? global : nullptr) {
  assert(params_.window >= 1 && params_.alpha >= 0.0 && params_.iterations >= 1);
  const size_t layer_slots =
      static_cast<size_t>(params_.window + 1) * graph_->num_vertices();
  vertex_occupancy_.assign(layer_slots, 0);
  states_.resize(layer_slots);
  edge_occupancy_.reserve(1024);
}

void GuidanceBuilder::index_insert(std::span<const VertexId> path) {
  const int nv = graph_->num_vertices();
  for (int t = 0; t < static_cast<int>(path.size()); ++t) {
    ++vertex_occupancy_[static_cast<size_t>(t) * nv + path[t]];
  }
  for (int t = 0; t + 1 < static_cast<int>(path.size()); ++t) {
    if (path[t] != path[t + 1]) ++edge_occupancy_[edge_key(t, path[t], path[t + 1])];
  }
}

void GuidanceBuilder::index_remove(std::span<const VertexId> path) {
  const int nv = graph_->num_vertices();
  for (int t = 0; t < static_cast<int>(path.size()); ++t) {
    --vertex_occupancy_[static_cast<size_t>(t) * nv + path[t]];
  }
  for (int t = 0; t + 1 < static_cast<int>(path.size()); ++t) {
    if (path[t] == path[t + 1]) continue;
    const auto it = edge_occupancy_.find(edge_key(t, path[t], path[t + 1]));
    if (it != edge_occupancy_.end() && --it->second == 0) edge_occupancy_.erase(it);
  }
}

int GuidanceBuilder::indexed_conflicts(int t, VertexId from, VertexId to) const {
  const int nv = graph_->num_vertices();
  int chi = vertex_occupancy_[static_cast<size_t>(t + 1) * nv + to];
  if (from != to && vertex_occupancy_[static_cast<size_t>(t) * nv + to] > 0 &&
      vertex_occupancy_[static_cast<size_t>(t + 1) * nv + from] > 0) {
    const auto it = edge_occupancy_.find(edge_key(t, to, from));
    if (it != edge_occupancy_.end()) chi += it->second;
  }
  return chi;
}

GuidanceBuilder::PlanResult GuidanceBuilder::run_astar(int agent, VertexId start) {
  // min-heap ordering with the deterministic tie-break: deeper layer first,
  // then smaller vertex id
  const auto heap_worse = [](const HeapEntry& a, const HeapEntry& b) {
    if (!(a.f == b.f)) return b.f < a.f;
    if (a.t != b.t) return a.t < b.t;
    return b.v < a.v;
  };

  const int w = params_.window;
  const int nv = graph_->num_vertices();
  const auto dist_row = dist_->table_for(goals_[agent]);
  std::span<const uint16_t> delta_row;
  if (global_ != nullptr && agent < global_->num_agents()) {
    delta_row = global_->delta_table(agent);
  }

  const auto h_primary = [&](int t, VertexId v) -> double {
    const int rem = w - t;
    const int d = DistTable::hops(dist_row, v);
    return rem + std::max(d - rem, 0);
  };

  ++stamp_;
  heap_.clear();
  const auto state_at = [&](int t, VertexId v) -> StateData& {
    return states_[static_cast<size_t>(t) * nv + v];
  };

  auto& root = state_at(0, start);
  root = {PathCost{}, kNoVertex, stamp_, 0};
  heap_.push_back({PathCost{h_primary(0, start), 0, 0}, 0, start});

  VertexId goal_vertex = kNoVertex;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), heap_worse);
    const HeapEntry e = heap_.back();
    heap_.pop_back();
    StateData& sd = state_at(e.t, e.v);
    if (sd.closed) continue;  // stale entry
    sd.closed = 1;
    ++expansions_;
    if (e.t == w) {
      goal_vertex = e.v;
      break;
    }

    const PathCost g = sd.g;
    const auto expand = [&](VertexId u) {
      const int chi = indexed_conflicts(e.t, e.v, u);
      PathCost gu = g;
      gu.primary += 1.0 + (chi > 0 ? params_.alpha : 0.0);
      if (!delta_row.empty()) gu.detour += DistTable::hops(delta_row, u);
      gu.collisions += chi;
      StateData& su = state_at(e.t + 1, u);
      if (su.stamp == stamp_ && (su.closed || !(gu < su.g))) return;
      su = {gu, e.v, stamp_, 0};
      gu.primary += h_primary(e.t + 1, u);
      heap_.push_back({gu, e.t + 1, u});
      std::push_heap(heap_.begin(), heap_.end(), heap_worse);
    };
    for (const VertexId u : graph_->neighbors(e.v)) expand(u);
    expand(e.v);  // wait
  }
  assert(goal_vertex != kNoVertex);  // waiting in place always yields a path

  PlanResult result;
  result.path.resize(w + 1);
  VertexId v = goal_vertex;
  for (int t = w; t >= 0; --t) {
    result.path[t] = v;
    v = state_at(t, v).parent;
  }
  result.cost = state_at(w, goal_vertex).g;
  result.collisions = static_cast<int>(result.cost.collisions);
  result.cost.primary += DistTable::hops(dist_row, goal_vertex);  // terminal
  return result;
}

GuidanceBuilder::PlanResult GuidanceBuilder::plan_path(int agent, const Config& q,
                                                       const Guidance& phi) {
  for (int j = 0; j < phi.num_agents(); ++j) {
    if (j != agent && phi.has_path(j)) index_insert(phi.path(j));
  }
  PlanResult result = run_astar(agent, q[agent]);
  for (int j = 0; j < phi.num_agents(); ++j) {
    if (j != agent && phi.has_path(j)) index_remove(phi.path(j));
  }
  return result;
}

Guidance GuidanceBuilder::build(const Config& q, const Guidance* prev) {
  const int n = static_cast<int>(goals_.size());
  Guidance phi = init_guidance(q, prev, n, params_.window);
  for (int i = 0; i < n; ++i) {
    if (phi.has_path(i)) index_insert(phi.path(i));
  }
  // bootstrap from scratch needs one extra sweep (no cache to refine)
  const int sweeps =
      (prev != nullptr && prev->initialized()) ? params_.iterations : params_.iterations + 1;
  for (int s = 0; s < sweeps; ++s) {
    for (const int i : order_agents(phi)) {
      if (phi.has_path(i)) index_remove(phi.path(i));
      const PlanResult r = run_astar(i, q[i]);
      phi.set_path(i, r.path);
      phi.set_collision_count(i, r.collisions);
      index_insert(phi.path(i));
    }
  }
  for (int i = 0; i < n; ++i) index_remove(phi.path(i));
  return phi;
}

}  // namespace mapf
