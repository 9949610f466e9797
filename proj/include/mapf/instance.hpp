/*
 * MAPF instance: grid + start/goal assignment
 */
#pragma once

#include <string_view>
#include <vector>

#include "mapf/graph.hpp"

namespace mapf {

struct Instance {
  Graph graph;
  std::vector<VertexId> starts;
  std::vector<VertexId> goals;
  int num_agents = 0;

  Instance() = default;
  // Validates: distinct starts, distinct goals, every goal reachable from
  // its start. Throws ParseError on violation.
  Instance(Graph g, std::vector<VertexId> s, std::vector<VertexId> t);

  // First `num_agents` records of a MovingAI version-1 .scen file. The
  // optimal-distance column is ignored. x is the column, y the row.
  static Instance parse_scenario(std::string_view scen_text, Graph graph, int num_agents);

  Config start_config() const { return starts; }
  Config goal_config() const { return goals; }
};

}  // namespace mapf
