#include "mapf/pibt.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace mapf {

void PriorityState::init(const Instance& instance, const DistTable& dist) {
  const int n = instance.num_agents;
  const double nv = instance.graph.num_vertices();
  base.resize(n);
  for (int i = 0; i < n; ++i) {
    base[i] = dist.dist(instance.starts[i], instance.goals[i]) / nv;
  }
}

std::vector<double> PriorityState::advanced(const std::vector<double>& prev, const Config& q,
                                            std::span<const VertexId> goals) const {
  std::vector<double> next(prev.size());
  for (size_t i = 0; i < prev.size(); ++i) {
    next[i] = q[i] != goals[i] ? prev[i] + 1.0 : base[i];
  }
  return next;
}

std::vector<int> PriorityState::order(const std::vector<double>& priorities) {
  std::vector<int> order(priorities.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&priorities](int a, int b) {
    return priorities[a] != priorities[b] ? priorities[a] > priorities[b] : a < b;
  });
  return order;
}

PibtEngine::PibtEngine(const Graph& graph, const DistTable& dist, std::vector<VertexId> goals)
    : graph_(&graph), dist_(&dist), goals_(std::move(goals)) {
  const int n = static_cast<int>(goals_.size());
  goal_rows_.reserve(n);
  for (int i = 0; i < n; ++i) goal_rows_.push_back(dist_->table_for(goals_[i]));
  q_next_.assign(n, kNoVertex);
  occupied_now_.assign(graph_->num_vertices(), -1);
  occupied_next_.assign(graph_->num_vertices(), -1);
  candidates_.resize(n);
  scratch_.resize(n);
}

void PibtEngine::sort_candidates(std::vector<VertexId>& out, int agent, VertexId v_now,
                                 VertexId next_hint, bool swap_mode, std::mt19937& rng) const {
  auto& sc = scratch_[agent];
  sc.clear();
  std::uniform_real_distribution<double> tie(0.0, 1.0);
  const auto add = [&](VertexId v) {
    const double d = DistTable::hops(goal_rows_[agent], v);
    ScoredCandidate c;
    c.v = v;
    if (swap_mode) {
      c.indicator = 0;
      c.key = -d;  // reverse scoring, guidance dropped
    } else {
      c.indicator = (next_hint != kNoVertex && v != next_hint) ? 1 : 0;
      c.key = d;
    }
    c.tie = tie(rng);
    sc.push_back(c);
  };
  for (const VertexId u : graph_->neighbors(v_now)) add(u);
  add(v_now);
  std::sort(sc.begin(), sc.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.indicator != b.indicator) return a.indicator < b.indicator;
    if (a.key != b.key) return a.key < b.key;
    if (a.tie != b.tie) return a.tie < b.tie;
    return a.v < b.v;
  });
  out.clear();
  for (const auto& c : sc) out.push_back(c.v);
}

std::vector<VertexId> PibtEngine::build_preference(int agent, const Config& q, VertexId next_hint,
                                                   bool swap_mode, std::mt19937& rng) const {
  std::vector<VertexId> out;
  sort_candidates(out, agent, q[agent], next_hint, swap_mode, rng);
  return out;
}

std::vector<VertexId> PibtEngine::build_preference(int agent, const Config& q,
                                                   const Guidance* phi, bool swap_mode,
                                                   std::mt19937& rng) const {
  const VertexId hint = phi != nullptr ? phi->next_vertex(agent) : kNoVertex;
  return build_preference(agent, q, hint, swap_mode, rng);
}

bool PibtEngine::swap_required(int pusher, int puller, VertexId v_pusher,
                               VertexId v_puller) const {
  const auto d = [&](int agent, VertexId v) { return DistTable::hops(goal_rows_[agent], v); };
  VertexId tmp = kNoVertex;
  while (d(pusher, v_puller) < d(pusher, v_pusher)) {
    int n = static_cast<int>(graph_->neighbors(v_puller).size());
    for (const VertexId u : graph_->neighbors(v_puller)) {
      const int a = occupied_now_[u];
      if (u == v_pusher ||
          (graph_->neighbors(u).size() == 1 && a != -1 && goals_[a] == u)) {
        --n;  // pull-impossible direction
      } else {
        tmp = u;
      }
    }
    if (n >= 2) return false;  // room to dodge, no exchange needed
    if (n <= 0) break;
    v_pusher = v_puller;
    v_puller = tmp;
  }
  return d(puller, v_pusher) < d(puller, v_puller) &&
         (d(pusher, v_pusher) == 0 || d(pusher, v_puller) < d(pusher, v_pusher));
}

bool PibtEngine::swap_possible(VertexId v_pusher_origin, VertexId v_puller_origin) const {
  VertexId v_pusher = v_pusher_origin, v_puller = v_puller_origin, tmp = kNoVertex;
  while (v_puller != v_pusher_origin) {  // avoid cycling
    int n = static_cast<int>(graph_->neighbors(v_puller).size());
    for (const VertexId u : graph_->neighbors(v_puller)) {
      const int a = occupied_now_[u];
      if (u == v_pusher ||
          (graph_->neighbors(u).size() == 1 && a != -1 && goals_[a] == u)) {
        --n;
      } else {
        tmp = u;
      }
    }
    if (n >= 2) return true;  // a branching vertex is reachable backwards
    if (n <= 0) return false;
    v_pusher = v_puller;
    v_puller = tmp;
  }
  return false;
}

int PibtEngine::swap_partner_locked(int agent) const {
  const VertexId v_now = q_now_[agent];
  // distance-best candidate, ties by vertex id (detection is deliberately
  // independent of the random tie-breaks)
  VertexId best = v_now;
  int best_d = DistTable::hops(goal_rows_[agent], v_now);
  for (const VertexId u : graph_->neighbors(v_now)) {
    const int du = DistTable::hops(goal_rows_[agent], u);
    if (du < best_d || (du == best_d && u < best)) {
      best = u;
      best_d = du;
    }
  }
  if (best == v_now) return -1;

  const int j = occupied_now_[best];
  if (j != -1 && q_next_[j] == kNoVertex && swap_required(agent, j, v_now, q_now_[j]) &&
      swap_possible(q_now_[j], v_now)) {
    return j;
  }
  // clearing case: a neighbor needs to swap with this agent through `best`
  for (const VertexId u : graph_->neighbors(v_now)) {
    const int k = occupied_now_[u];
    if (k == -1 || best == q_now_[k]) continue;
    if (swap_required(k, agent, v_now, best) && swap_possible(best, v_now)) return k;
  }
  return -1;
}

std::optional<int> PibtEngine::swap_partner(int agent, const Config& q) {
  q_now_ = q;
  std::fill(q_next_.begin(), q_next_.end(), kNoVertex);
  for (size_t i = 0; i < q.size(); ++i) occupied_now_[q[i]] = static_cast<int32_t>(i);
  const int j = swap_partner_locked(agent);
  for (const VertexId v : q) occupied_now_[v] = -1;
  if (j < 0) return std::nullopt;
  return j;
}

bool PibtEngine::func_pibt(int agent, std::span<const VertexId> next_hint, std::mt19937& rng,
                           bool enable_swap) {
  const VertexId v_now = q_now_[agent];
  const VertexId hint = next_hint.empty() ? kNoVertex : next_hint[agent];
  auto& cands = candidates_[agent];
  sort_candidates(cands, agent, v_now, hint, false, rng);

  int partner = -1;
  if (enable_swap) {
    partner = swap_partner_locked(agent);
    if (partner >= 0) sort_candidates(cands, agent, v_now, hint, true, rng);
  }

  for (size_t k = 0; k < cands.size(); ++k) {
    const VertexId u = cands[k];
    if (occupied_next_[u] != -1) continue;  // vertex conflict
    const int j = occupied_now_[u];
    if (j != -1 && q_next_[j] == v_now) continue;  // swap conflict

    occupied_next_[u] = agent;
    dirty_next_.push_back(u);
    q_next_[agent] = u;

    // priority inheritance: the occupant of u must move first
    if (j != -1 && j != agent && q_next_[j] == kNoVertex) {
      if (!func_pibt(j, next_hint, rng, enable_swap)) continue;  // j stays, u stays blocked
    }
    // pull the swap partner into the vacated vertex
    if (k == 0 && partner >= 0 && q_next_[partner] == kNoVertex &&
        occupied_next_[v_now] == -1) {
      q_next_[partner] = v_now;
      occupied_next_[v_now] = partner;
      dirty_next_.push_back(v_now);
    }
    return true;
  }

  // nowhere to go: hold the current vertex
  q_next_[agent] = v_now;
  occupied_next_[v_now] = agent;
  dirty_next_.push_back(v_now);
  return false;
}

std::optional<Config> PibtEngine::step(const Config& q, std::span<const int> order,
                                       std::span<const VertexId> next_hint,
                                       std::span<const Constraint> constraints,
                                       std::mt19937& rng, bool enable_swap) {
  const int n = static_cast<int>(q.size());
  q_now_ = q;
  std::fill(q_next_.begin(), q_next_.end(), kNoVertex);
  for (int i = 0; i < n; ++i) occupied_now_[q[i]] = i;

  bool ok = true;
  // pin constrained agents, rejecting jointly colliding combinations before
  // any recursion
  for (const auto& [agent, vertex] : constraints) {
    if (occupied_next_[vertex] != -1) {
      ok = false;
      break;
    }
    const int j = occupied_now_[vertex];
    if (j != -1 && j != agent && q_next_[j] == q[agent]) {
      ok = false;  // two constraints would swap
      break;
    }
    q_next_[agent] = vertex;
    occupied_next_[vertex] = agent;
    dirty_next_.push_back(vertex);
  }
  if (ok) {
    for (const int i : order) {
      if (q_next_[i] == kNoVertex && !func_pibt(i, next_hint, rng, enable_swap)) {
        ok = false;  // constraints unsatisfiable under recursion
        break;
      }
    }
  }

  std::optional<Config> result;
  if (ok) result = q_next_;
  for (const VertexId v : q) occupied_now_[v] = -1;
  for (const VertexId v : dirty_next_) occupied_next_[v] = -1;
  dirty_next_.clear();
  return result;
}

}  // namespace mapf
