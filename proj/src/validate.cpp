#include "mapf/validate.hpp"

#include <algorithm>
#include <unordered_map>

namespace mapf {

namespace {

std::optional<Violation> fail(Violation::Kind kind, int t, int a, int b, std::string msg) {
  return Violation{kind, t, a, b, std::move(msg)};
}

}  // namespace

std::optional<Violation> validate(const Instance& instance, const Solution& solution) {
  const int n = instance.num_agents;
  const auto& configs = solution.configs;
  if (configs.empty()) {
    return fail(Violation::Kind::BadShape, -1, -1, -1, "solution holds no configurations");
  }
  for (size_t t = 0; t < configs.size(); ++t) {
    if (static_cast<int>(configs[t].size()) != n) {
      return fail(Violation::Kind::BadShape, static_cast<int>(t), -1, -1,
                  "configuration " + std::to_string(t) + " has wrong agent count");
    }
  }
  if (configs.front() != instance.starts) {
    return fail(Violation::Kind::StartMismatch, 0, -1, -1,
                "first configuration differs from the starts");
  }
  if (configs.back() != instance.goals) {
    return fail(Violation::Kind::GoalMismatch, static_cast<int>(configs.size()) - 1, -1, -1,
                "last configuration differs from the goals");
  }

  std::unordered_map<VertexId, int> occupant, prev_occupant;
  for (size_t t = 0; t < configs.size(); ++t) {
    occupant.clear();
    for (int i = 0; i < n; ++i) {
      const auto [it, fresh] = occupant.emplace(configs[t][i], i);
      if (!fresh) {
        return fail(Violation::Kind::VertexCollision, static_cast<int>(t), it->second, i,
                    "agents " + std::to_string(it->second) + " and " + std::to_string(i) +
                        " share vertex " + std::to_string(configs[t][i]) + " at t=" +
                        std::to_string(t));
      }
    }
    if (t > 0) {
      for (int i = 0; i < n; ++i) {
        const VertexId from = configs[t - 1][i];
        const VertexId to = configs[t][i];
        if (from == to) continue;
        const auto& nbrs = instance.graph.neighbors(from);
        if (!std::binary_search(nbrs.begin(), nbrs.end(), to)) {
          return fail(Violation::Kind::BadMove, static_cast<int>(t), i, -1,
                      "agent " + std::to_string(i) + " jumps " + std::to_string(from) + "->" +
                          std::to_string(to) + " at t=" + std::to_string(t));
        }
        const auto it = prev_occupant.find(to);
        if (it != prev_occupant.end() && it->second != i &&
            configs[t][it->second] == from) {
          return fail(Violation::Kind::EdgeSwap, static_cast<int>(t), i, it->second,
                      "agents " + std::to_string(i) + " and " + std::to_string(it->second) +
                          " swap vertices between t=" + std::to_string(t - 1) + " and t=" +
                          std::to_string(t));
        }
      }
    }
    std::swap(prev_occupant, occupant);
  }
  return std::nullopt;
}

Metrics compute_metrics(const Instance& instance, const DistTable& dist,
                        const Solution& solution) {
  const int n = instance.num_agents;
  Metrics m;
  m.travel.assign(n, 0);
  m.visits.assign(instance.graph.num_vertices(), 0);
  for (int i = 0; i < n; ++i) {
    for (size_t t = solution.configs.size(); t-- > 0;) {
      if (solution.configs[t][i] != instance.goals[i]) {
        m.travel[i] = static_cast<int32_t>(t) + 1;
        break;
      }
    }
    m.flowtime += m.travel[i];
    m.lower_bound += dist.dist(instance.starts[i], instance.goals[i]);
    for (int t = 0; t <= m.travel[i]; ++t) {
      ++m.visits[solution.configs[t][i]];
    }
  }
  m.ratio = m.lower_bound > 0 ? static_cast<double>(m.flowtime) / m.lower_bound : 1.0;
  return m;
}

}  // namespace mapf
