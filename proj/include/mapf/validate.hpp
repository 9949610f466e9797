/*
 * independent solution validation and metrics
 */
#pragma once

#include <optional>
#include <string>

#include "mapf/dist_table.hpp"
#include "mapf/instance.hpp"
#include "mapf/lacam.hpp"

namespace mapf {

struct Violation {
  enum class Kind {
    BadShape,
    StartMismatch,
    GoalMismatch,
    BadMove,
    VertexCollision,
    EdgeSwap,
  };
  Kind kind;
  int timestep = -1;
  int agent_a = -1;
  int agent_b = -1;
  std::string message;
};

// Checks shape, endpoints, per-step adjacency-or-wait, vertex collisions
// and edge swaps; reports the first violation found.
std::optional<Violation> validate(const Instance& instance, const Solution& solution);

struct Metrics {
  int64_t flowtime = 0;
  int64_t lower_bound = 0;  // sum of dist(start, goal)
  double ratio = 1.0;       // flowtime / lower bound, 1 when the bound is zero
  std::vector<int32_t> travel;
  std::vector<int64_t> visits;  // per vertex, one count per agent per occupied timestep
};

// Flowtime is recomputed from the configurations here, independently of
// whatever the producer recorded.
Metrics compute_metrics(const Instance& instance, const DistTable& dist,
                        const Solution& solution);

}  // namespace mapf
