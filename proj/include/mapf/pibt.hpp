/*
 * PIBT: one-step configuration generation by priority inheritance with
 * backtracking, guidance-aware preferences and the swap technique
 */
#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mapf/dist_table.hpp"
#include "mapf/guidance.hpp"
#include "mapf/instance.hpp"

namespace mapf {

// Dynamic priorities: base = dist(start, goal) / |V|, incremented by one per
// step off goal, reset to base on arrival. The order is made strict by
// breaking ties on agent index.
struct PriorityState {
  std::vector<double> base;

  void init(const Instance& instance, const DistTable& dist);
  std::vector<double> initial() const { return base; }
  std::vector<double> advanced(const std::vector<double>& prev, const Config& q,
                               std::span<const VertexId> goals) const;
  static std::vector<int> order(const std::vector<double>& priorities);
};

class PibtEngine {
 public:
  struct Constraint {
    int agent;
    VertexId vertex;
  };

  PibtEngine(const Graph& graph, const DistTable& dist, std::vector<VertexId> goals);

  // Candidates = neighbors(q[agent]) + stay, each scored once with a fresh
  // random tie-break, sorted ascending by
  //   ⟨hint != v, dist(v, goal), tie⟩      (normal mode)
  //   ⟨0, -dist(v, goal), tie⟩             (swap mode; guidance ignored)
  std::vector<VertexId> build_preference(int agent, const Config& q, VertexId next_hint,
                                         bool swap_mode, std::mt19937& rng) const;
  std::vector<VertexId> build_preference(int agent, const Config& q, const Guidance* phi,
                                         bool swap_mode, std::mt19937& rng) const;

  // One synchronous step from q. Constrained agents are pinned to their
  // vertex (conflicting constraints are rejected up front); the rest are
  // assigned by PIBT recursion over `order`. nullopt when the constraints
  // are jointly unsatisfiable. next_hint may be empty (no guidance).
  std::optional<Config> step(const Config& q, std::span<const int> order,
                             std::span<const VertexId> next_hint,
                             std::span<const Constraint> constraints, std::mt19937& rng,
                             bool enable_swap);

  // Swap-partner detection on a fresh step (no reservations). Returns the
  // agent this one must exchange positions with through a narrow corridor,
  // if any.
  std::optional<int> swap_partner(int agent, const Config& q);

 private:
  bool func_pibt(int agent, std::span<const VertexId> next_hint, std::mt19937& rng,
                 bool enable_swap);
  int swap_partner_locked(int agent) const;  // uses current occupancy state
  bool swap_required(int pusher, int puller, VertexId v_pusher, VertexId v_puller) const;
  bool swap_possible(VertexId v_pusher, VertexId v_puller) const;
  void sort_candidates(std::vector<VertexId>& candidates, int agent, VertexId next_hint,
                       bool swap_mode, std::mt19937& rng) const;

  const Graph* graph_;
  const DistTable* dist_;
  std::vector<VertexId> goals_;
  std::vector<std::span<const uint16_t>> goal_rows_;

  // per-step workspace
  Config q_now_;
  std::vector<VertexId> q_next_;        // kNoVertex = unassigned
  std::vector<int32_t> occupied_now_;   // vertex -> agent or -1
  std::vector<int32_t> occupied_next_;  // vertex -> agent or -1
  std::vector<VertexId> dirty_next_;
  struct ScoredCandidate {
    VertexId v;
    int indicator;
    double key;
    double tie;
  };
  mutable std::vector<std::vector<VertexId>> candidates_;         // per agent, reused
  mutable std::vector<std::vector<ScoredCandidate>> scratch_;
};

}  // namespace mapf
