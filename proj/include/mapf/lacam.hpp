/*
 * LaCAM: DFS over configurations with lazily enumerated per-agent
 * constraints, PIBT successor generation and per-node guidance
 */
#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "mapf/dist_table.hpp"
#include "mapf/global_guidance.hpp"
#include "mapf/guidance.hpp"
#include "mapf/instance.hpp"

namespace mapf {

using Clock = std::chrono::steady_clock;

enum class GuidanceMode { None, Global, Local, Both };

std::string to_string(GuidanceMode mode);
std::optional<GuidanceMode> guidance_mode_from(std::string_view name);

struct SolverOptions {
  GuidanceMode guidance = GuidanceMode::None;
  int window = 20;
  double alpha = 3.0;
  int iterations = 1;
  bool enable_swap = true;
  // rebuild local guidance every k-th generation; the default 1 is the
  // intended behavior, larger values exist to study stale guidance
  int guidance_period = 1;
  uint64_t node_budget = 0;  // 0 = unlimited; exceeding reports Timeout
  SuoParams suo;
  uint32_t seed = 0;
};

enum class SolveStatus { Solved, Timeout, Unsolvable };

struct Solution {
  std::vector<Config> configs;     // configs[0] = starts, back() = goals
  std::vector<int32_t> travel;     // per-agent travel time
  int64_t flowtime = 0;
};

// travel time = last timestep at which the agent is away from its goal,
// plus one; agents that never leave the goal contribute zero
Solution make_solution(std::vector<Config> configs, std::span<const VertexId> goals);

struct SolveStats {
  uint64_t nodes_generated = 0;
  uint64_t lowlevel_pops = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Timeout;
  Solution solution;
  SolveStats stats;
};

SolveResult solve(const Instance& instance, const DistTable& dist, const SolverOptions& options,
                  Clock::time_point deadline);

}  // namespace mapf
