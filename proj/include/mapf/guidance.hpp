/*
 * local guidance: windowed, collision-penalized per-agent path hints,
 * rebuilt for every configuration the search expands
 */
#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapf/dist_table.hpp"
#include "mapf/global_guidance.hpp"

namespace mapf {

// Lexicographic path cost ⟨travel + collision penalty, global-guidance
// detour, collision count⟩. The detour component stays zero when no global
// guidance is in play, which keeps the tuples dimension-compatible.
struct PathCost {
  double primary = 0.0;
  int64_t detour = 0;
  int64_t collisions = 0;

  friend bool operator==(const PathCost&, const PathCost&) = default;
  friend bool operator<(const PathCost& a, const PathCost& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    if (a.detour != b.detour) return a.detour < b.detour;
    return a.collisions < b.collisions;
  }
  PathCost& operator+=(const PathCost& o) {
    primary += o.primary;
    detour += o.detour;
    collisions += o.collisions;
    return *this;
  }
  friend PathCost operator+(PathCost a, const PathCost& b) { return a += b; }
};

// Agent-wise guidance paths of exactly window+1 vertices (empty for agents
// whose initialization was invalidated), plus the collision count recorded
// when each path was last planned.
class Guidance {
 public:
  Guidance() = default;
  Guidance(int num_agents, int window)
      : window_(window),
        num_agents_(num_agents),
        flat_(static_cast<size_t>(num_agents) * (window + 1), kNoVertex),
        collisions_(num_agents, 0) {}

  int window() const { return window_; }
  int num_agents() const { return num_agents_; }
  bool initialized() const { return num_agents_ > 0; }

  bool has_path(int agent) const { return initialized() && slot(agent)[0] != kNoVertex; }
  std::span<const VertexId> path(int agent) const {
    if (!has_path(agent)) return {};
    return slot(agent);
  }
  // intended next vertex, kNoVertex when the agent carries no path
  VertexId next_vertex(int agent) const {
    if (!has_path(agent)) return kNoVertex;
    return slot(agent)[1];
  }

  void set_path(int agent, std::span<const VertexId> p);
  void clear_path(int agent);
  int collision_count(int agent) const { return collisions_[agent]; }
  void set_collision_count(int agent, int c) { collisions_[agent] = c; }

 private:
  std::span<const VertexId> slot(int agent) const {
    return {flat_.data() + static_cast<size_t>(agent) * (window_ + 1),
            static_cast<size_t>(window_ + 1)};
  }
  std::span<VertexId> slot(int agent) {
    return {flat_.data() + static_cast<size_t>(agent) * (window_ + 1),
            static_cast<size_t>(window_ + 1)};
  }

  int window_ = 0;
  int num_agents_ = 0;
  std::vector<VertexId> flat_;
  std::vector<int32_t> collisions_;
};

struct GuidanceParams {
  int window = 20;
  double alpha = 3.0;  // collision penalty weight
  int iterations = 1;  // planning sweeps when a previous guidance seeds the build
  bool use_global = false;
};

// Shift of the previous guidance by one timestep for agents that followed
// it (path padded with a trailing wait); agents that deviated get an empty
// path. Collision counts carry over with the shifted paths.
Guidance init_guidance(const Config& q, const Guidance* prev, int num_agents, int window);

// Conflicts of candidate step from->to at timestep t against the nonempty
// paths in phi, excluding `self`: one per agent occupying `to` at t+1, plus
// one per agent traversing to->from over the same step (swap; only counted
// for actual moves, from != to).
int count_collisions(VertexId from, VertexId to, int t, const Guidance& phi, int self);

// Agents sorted by recorded collision count, descending; ties by index.
std::vector<int> order_agents(const Guidance& phi);

// Builds guidance for one configuration at a time. Owns the pre-allocated
// space-time A* workspace and the conflict index, both reused across calls.
class GuidanceBuilder {
 public:
  GuidanceBuilder(const Graph& graph, const DistTable& dist, std::span<const VertexId> goals,
                  const GuidanceParams& params, const GlobalGuidance* global = nullptr);

  // init_guidance, then `iterations` planning sweeps (one extra sweep when
  // no previous guidance is available), visiting agents in order_agents
  // order and replacing each path by the exact lexicographic minimizer.
  Guidance build(const Config& q, const Guidance* prev);

  struct PlanResult {
    std::vector<VertexId> path;  // window+1 vertices, path[0] = start
    PathCost cost;               // stage sum + terminal
    int collisions = 0;
  };
  // Windowed space-time A* for one agent against the paths currently held
  // in phi (the agent's own path is ignored). Exposed for verification;
  // build() goes through the incremental index instead.
  PlanResult plan_path(int agent, const Config& q, const Guidance& phi);

  uint64_t expansions() const { return expansions_; }
  const GuidanceParams& params() const { return params_; }

 private:
  PlanResult run_astar(int agent, VertexId start);
  void index_insert(std::span<const VertexId> path);
  void index_remove(std::span<const VertexId> path);
  int indexed_conflicts(int t, VertexId from, VertexId to) const;
  static uint64_t edge_key(int t, VertexId from, VertexId to) {
    return (static_cast<uint64_t>(t) << 52) | (static_cast<uint64_t>(from) << 26) |
           static_cast<uint64_t>(to);
  }

  const Graph* graph_;
  const DistTable* dist_;
  std::vector<VertexId> goals_;
  GuidanceParams params_;
  const GlobalGuidance* global_;

  // conflict index over the paths currently inserted
  std::vector<uint16_t> vertex_occupancy_;  // (window+1) x |V|
  std::unordered_map<uint64_t, uint16_t> edge_occupancy_;

  // time-expanded A* workspace, stamped per run to avoid clearing
  struct StateData {
    PathCost g;
    VertexId parent;
    uint32_t stamp;
    uint8_t closed;
  };
  std::vector<StateData> states_;
  struct HeapEntry {
    PathCost f;
    int32_t t;
    VertexId v;
  };
  std::vector<HeapEntry> heap_;
  uint32_t stamp_ = 0;
  uint64_t expansions_ = 0;
};

}  // namespace mapf
