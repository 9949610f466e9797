/*
 * lazily built per-goal BFS distance tables
 */
#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapf/graph.hpp"

namespace mapf {

// Exact hop distances from every vertex to a goal, one table per goal,
// materialized on first query and cached. Reads are safe from multiple
// threads; construction is internally synchronized.
class DistTable {
 public:
  static constexpr int kInfinity = std::numeric_limits<int>::max() / 4;
  static constexpr uint16_t kUnreachable = 0xffff;

  explicit DistTable(const Graph& graph);

  // kInfinity when unreachable
  int dist(VertexId v, VertexId goal) const {
    const uint16_t d = table_for(goal)[v];
    return d == kUnreachable ? kInfinity : d;
  }

  std::span<const uint16_t> table_for(VertexId goal) const;

  static int hops(std::span<const uint16_t> table, VertexId v) {
    const uint16_t d = table[v];
    return d == kUnreachable ? kInfinity : d;
  }

 private:
  const Graph* graph_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<VertexId, const std::vector<uint16_t>*> by_goal_;
  mutable std::deque<std::vector<uint16_t>> storage_;
};

}  // namespace mapf
