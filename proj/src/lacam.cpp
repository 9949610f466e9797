#include "mapf/lacam.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "mapf/pibt.hpp"

namespace mapf {

std::string to_string(GuidanceMode mode) {
  switch (mode) {
    case GuidanceMode::None: return "none";
    case GuidanceMode::Global: return "global";
    case GuidanceMode::Local: return "local";
    case GuidanceMode::Both: return "both";
  }
  return "none";
}

std::optional<GuidanceMode> guidance_mode_from(std::string_view name) {
  if (name == "none") return GuidanceMode::None;
  if (name == "global") return GuidanceMode::Global;
  if (name == "local") return GuidanceMode::Local;
  if (name == "both") return GuidanceMode::Both;
  return std::nullopt;
}

Solution make_solution(std::vector<Config> configs, std::span<const VertexId> goals) {
  Solution sol;
  sol.configs = std::move(configs);
  sol.travel.assign(goals.size(), 0);
  for (size_t i = 0; i < goals.size(); ++i) {
    for (size_t t = sol.configs.size(); t-- > 0;) {
      if (sol.configs[t][i] != goals[i]) {
        sol.travel[i] = static_cast<int32_t>(t) + 1;
        break;
      }
    }
    sol.flowtime += sol.travel[i];
  }
  return sol;
}

namespace {

struct LNode {
  int32_t who;
  VertexId where;
  int32_t parent;  // index into the owning node's pool, -1 for the root
  int32_t depth;
};

struct HNode {
  Config q;
  HNode* parent = nullptr;
  uint32_t generation = 0;
  std::vector<double> priorities;
  std::vector<int> order;
  std::vector<LNode> lpool;      // lazily grown constraint tree
  std::deque<int32_t> lqueue;    // pending entries, FIFO
  Guidance phi;                  // local guidance for this configuration
  std::vector<VertexId> hint;    // per-agent intended next vertex, or empty
};

}  // namespace

SolveResult solve(const Instance& instance, const DistTable& dist, const SolverOptions& options,
                  Clock::time_point deadline) {
  SolveResult res;
  const int n = instance.num_agents;
  const Graph& graph = instance.graph;

  std::optional<GlobalGuidance> psi;
  if (options.guidance == GuidanceMode::Global || options.guidance == GuidanceMode::Both) {
    psi = GlobalGuidance::build_suo(instance, options.suo);
  }
  const bool use_local =
      options.guidance == GuidanceMode::Local || options.guidance == GuidanceMode::Both;
  std::optional<GuidanceBuilder> builder;
  if (use_local) {
    GuidanceParams params{options.window, options.alpha, options.iterations,
                          options.guidance == GuidanceMode::Both};
    builder.emplace(graph, dist, instance.goals, params, psi ? &*psi : nullptr);
  }

  PibtEngine engine(graph, dist, instance.goals);
  PriorityState priorities;
  priorities.init(instance, dist);
  std::mt19937 rng(options.seed);

  std::deque<HNode> nodes;
  std::unordered_map<Config, HNode*, ConfigHash> explored;
  std::vector<HNode*> open;

  const auto make_node = [&](Config q, HNode* parent) -> HNode* {
    HNode& node = nodes.emplace_back();
    node.q = std::move(q);
    node.parent = parent;
    node.generation = parent != nullptr ? parent->generation + 1 : 0;
    node.priorities = parent != nullptr
                          ? priorities.advanced(parent->priorities, node.q, instance.goals)
                          : priorities.initial();
    node.order = PriorityState::order(node.priorities);
    node.lpool.push_back({-1, kNoVertex, -1, 0});
    node.lqueue.push_back(0);
    if (use_local) {
      const Guidance* prev =
          parent != nullptr && parent->phi.initialized() ? &parent->phi : nullptr;
      const bool rebuild = options.guidance_period <= 1 || prev == nullptr ||
                           node.generation % options.guidance_period == 0;
      node.phi = rebuild ? builder->build(node.q, prev)
                         : init_guidance(node.q, prev, n, options.window);
      node.hint.resize(n);
      for (int i = 0; i < n; ++i) node.hint[i] = node.phi.next_vertex(i);
    } else if (psi) {
      node.hint.resize(n);
      for (int i = 0; i < n; ++i) node.hint[i] = psi->next_on_path(i, node.q[i]);
    }
    ++res.stats.nodes_generated;
    return &node;
  };

  HNode* root = make_node(instance.start_config(), nullptr);
  explored.emplace(root->q, root);
  open.push_back(root);

  std::vector<PibtEngine::Constraint> constraints;
  while (!open.empty()) {
    if (Clock::now() >= deadline ||
        (options.node_budget != 0 && res.stats.nodes_generated >= options.node_budget)) {
      res.status = SolveStatus::Timeout;
      return res;
    }
    HNode* node = open.back();
    if (node->q == instance.goals) {
      std::vector<Config> configs;
      for (const HNode* p = node; p != nullptr; p = p->parent) configs.push_back(p->q);
      std::reverse(configs.begin(), configs.end());
      res.status = SolveStatus::Solved;
      res.solution = make_solution(std::move(configs), instance.goals);
      return res;
    }
    if (node->lqueue.empty()) {
      open.pop_back();  // constraint tree exhausted
      continue;
    }
    const int32_t lidx = node->lqueue.front();
    node->lqueue.pop_front();
    ++res.stats.lowlevel_pops;
    const LNode lnode = node->lpool[lidx];
    if (lnode.depth < n) {
      const int next_agent = node->order[lnode.depth];
      const VertexId hint =
          node->hint.empty() ? kNoVertex : node->hint[next_agent];
      for (const VertexId v :
           engine.build_preference(next_agent, node->q, hint, false, rng)) {
        node->lpool.push_back({next_agent, v, lidx, lnode.depth + 1});
        node->lqueue.push_back(static_cast<int32_t>(node->lpool.size()) - 1);
      }
    }
    constraints.clear();
    for (int32_t k = lidx; k > 0; k = node->lpool[k].parent) {
      constraints.push_back({node->lpool[k].who, node->lpool[k].where});
    }
    auto q_next =
        engine.step(node->q, node->order, node->hint, constraints, rng, options.enable_swap);
    if (!q_next) continue;
    const auto it = explored.find(*q_next);
    if (it != explored.end()) {
      open.push_back(it->second);  // revisit keeps the search complete
      continue;
    }
    HNode* child = make_node(std::move(*q_next), node);
    explored.emplace(child->q, child);
    open.push_back(child);
  }
  res.status = SolveStatus::Unsolvable;
  return res;
}

}  // namespace mapf
