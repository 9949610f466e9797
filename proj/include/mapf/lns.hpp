/*
 * anytime refinement: LNS over random agent subsets, repaired by
 * prioritized planning, accepting strict flowtime improvements
 */
#pragma once

#include <optional>
#include <random>
#include <span>

#include "mapf/lacam.hpp"

namespace mapf {

struct RefineOptions {
  int workers = 1;  // >1 runs concurrent proposal loops sharing the incumbent
  uint32_t seed = 0;
  int max_subset = 30;         // subset size drawn uniformly from [1, min(this, n)]
  uint64_t max_proposals = 0;  // 0 = unlimited; fixed budgets make runs reproducible
};

struct TracePoint {
  uint64_t proposal = 0;
  int64_t flowtime = 0;
  double elapsed_ms = 0.0;
};

struct RefineResult {
  Solution solution;
  std::vector<TracePoint> trace;  // first entry is the initial incumbent
  uint64_t proposals = 0;
  uint64_t accepted = 0;
};

RefineResult refine(const Solution& initial, const Instance& instance, const DistTable& dist,
                    Clock::time_point deadline, const RefineOptions& options);

// per-agent rows, every row at least one vertex, trailing rest at the goal
using AgentPaths = std::vector<std::vector<VertexId>>;

AgentPaths to_agent_paths(const Solution& solution);
// pads ragged rows with their final vertex and trims the tail where every
// agent already rests at its goal
Solution to_solution(const AgentPaths& paths, std::span<const VertexId> goals);

// Replans `subset` sequentially in random order by full-horizon space-time
// A*, treating every other path as hard vertex/edge obstacles; agents
// resting at their goal block that vertex from the arrival onward. Returns
// one path per subset member (subset order), or nullopt when some member
// cannot reach its goal within makespan + |V| steps.
std::optional<AgentPaths> pp_repair(std::span<const int> subset, const AgentPaths& paths,
                                    const Instance& instance, const DistTable& dist,
                                    std::mt19937& rng);

}  // namespace mapf
