/*
 * independent reference implementations used only to check the solver:
 * exhaustive windowed-path costs, joint-state search, brute-force distances
 */
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mapf/graph.hpp"
#include "mapf/guidance.hpp"
#include "mapf/instance.hpp"

namespace oracle {

// unit-weight Dijkstra from one source (deliberately not BFS, to stay
// structurally independent of the library's tables)
std::vector<int> dijkstra_from(const mapf::Graph& g, mapf::VertexId source);

// multi-source hop distances
std::vector<int> hops_from_set(const mapf::Graph& g, const std::vector<mapf::VertexId>& sources);

inline constexpr int kInf = 1 << 28;

// every length-(window+1) vertex sequence from start that respects
// adjacency-or-wait
std::vector<std::vector<mapf::VertexId>> enumerate_windowed_paths(const mapf::Graph& g,
                                                                  mapf::VertexId start,
                                                                  int window);

// spec cost of one windowed path: stage terms summed in path order, then
// the terminal term; chi and delta computed directly from definitions
mapf::PathCost windowed_path_cost(const mapf::Graph& g, const std::vector<mapf::VertexId>& path,
                                  mapf::VertexId goal, double alpha,
                                  const std::vector<std::vector<mapf::VertexId>>& other_paths,
                                  const std::vector<mapf::VertexId>& psi_path);

// lexicographic minimum over all windowed paths
mapf::PathCost best_windowed_cost(const mapf::Graph& g, mapf::VertexId start,
                                  mapf::VertexId goal, int window, double alpha,
                                  const std::vector<std::vector<mapf::VertexId>>& other_paths,
                                  const std::vector<mapf::VertexId>& psi_path);

// one synchronous step: adjacency-or-wait, distinct targets, no swaps
bool valid_transition(const mapf::Graph& g, const mapf::Config& from, const mapf::Config& to);

// all configurations reachable from q in one step (small instances only)
std::vector<mapf::Config> valid_successors(const mapf::Graph& g, const mapf::Config& q);

// joint-configuration BFS over the full product space
bool joint_solvable(const mapf::Instance& instance);

// exact minimum flowtime by reverse Dijkstra over (configuration,
// active-agent mask); kInf when unsolvable. Exponential, tiny inputs only.
int64_t joint_min_flowtime(const mapf::Instance& instance);

}  // namespace oracle
