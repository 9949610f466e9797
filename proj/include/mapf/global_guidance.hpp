/*
 * time-independent per-agent paths via space utilization optimization
 */
#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapf/dist_table.hpp"
#include "mapf/instance.hpp"

namespace mapf {

struct SuoParams {
  int passes = 2;
  double beta = 0.5;  // congestion weight on vertex usage
};

// Congestion-diversified start-goal paths, built once per instance and
// immutable afterwards. delta() is the hop distance from a vertex to the
// agent's path, materialized lazily by multi-source BFS; readers may be
// concurrent.
class GlobalGuidance {
 public:
  // Every path is initialized as a shortest path, then each pass replans
  // agents one by one with vertex cost 1 + beta * (usage by other agents).
  static GlobalGuidance build_suo(const Instance& instance, const SuoParams& params);

  // Adopts the given paths (validated: nonempty, adjacency-respecting).
  static GlobalGuidance from_paths(const Graph& graph, std::vector<std::vector<VertexId>> paths);

  int num_agents() const { return static_cast<int>(paths_.size()); }
  std::span<const VertexId> path(int agent) const { return paths_[agent]; }

  int delta(int agent, VertexId v) const {
    return DistTable::hops(delta_table(agent), v);
  }
  std::span<const uint16_t> delta_table(int agent) const;

  // Successor of v along the agent's path; the final vertex maps to itself,
  // off-path vertices to kNoVertex.
  VertexId next_on_path(int agent, VertexId v) const;

  // one line per agent: "id:(x,y),(x,y),..."
  void dump(std::ostream& out) const;

 private:
  const Graph* graph_ = nullptr;
  std::vector<std::vector<VertexId>> paths_;
  std::vector<std::unordered_map<VertexId, int32_t>> position_;  // vertex -> path index
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::unique_ptr<std::vector<uint16_t>>> delta_;
};

}  // namespace mapf
