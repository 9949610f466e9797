#include "mapf/dist_table.hpp"

#include <cassert>
#include <mutex>

namespace mapf {

DistTable::DistTable(const Graph& graph) : graph_(&graph) {
  // distances are stored as uint16 with 0xffff reserved for "unreachable"
  assert(graph.num_vertices() < kUnreachable);
}

std::span<const uint16_t> DistTable::table_for(VertexId goal) const {
  {
    std::shared_lock lock(mutex_);
    auto it = by_goal_.find(goal);
    if (it != by_goal_.end()) return *it->second;
  }
  std::unique_lock lock(mutex_);
  auto it = by_goal_.find(goal);
  if (it != by_goal_.end()) return *it->second;

  auto& table = storage_.emplace_back(graph_->num_vertices(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(graph_->num_vertices());
  table[goal] = 0;
  queue.push_back(goal);
  for (size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    const uint16_t d = table[v];
    for (const VertexId u : graph_->neighbors(v)) {
      if (table[u] == kUnreachable) {
        table[u] = static_cast<uint16_t>(d + 1);
        queue.push_back(u);
      }
    }
  }
  by_goal_.emplace(goal, &table);
  return table;
}

}  // namespace mapf
