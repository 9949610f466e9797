#include "mapf/instance.hpp"

#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>

namespace mapf {

namespace {

// single BFS reachability sweep, kept local so instance validation does not
// depend on the solver's distance tables
std::vector<uint8_t> reachable_from(const Graph& g, VertexId source) {
  std::vector<uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> queue{source};
  seen[source] = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const VertexId u : g.neighbors(queue[head])) {
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

void check_instance(const Instance& inst) {
  const int n = inst.num_agents;
  if (n <= 0) throw ParseError("instance needs at least one agent");
  std::unordered_set<VertexId> seen_starts, seen_goals;
  for (int i = 0; i < n; ++i) {
    const VertexId s = inst.starts[i];
    const VertexId g = inst.goals[i];
    if (s < 0 || s >= inst.graph.num_vertices() || g < 0 || g >= inst.graph.num_vertices()) {
      throw ParseError("agent " + std::to_string(i) + ": start or goal is not a vertex");
    }
    if (!seen_starts.insert(s).second) {
      throw ParseError("agent " + std::to_string(i) + ": duplicate start vertex");
    }
    if (!seen_goals.insert(g).second) {
      throw ParseError("agent " + std::to_string(i) + ": duplicate goal vertex");
    }
  }
  // connectivity: group agents by component of their start
  std::vector<uint8_t> seen;
  VertexId seen_source = kNoVertex;
  for (int i = 0; i < n; ++i) {
    if (seen_source == kNoVertex || !seen[inst.starts[i]]) {
      seen = reachable_from(inst.graph, inst.starts[i]);
      seen_source = inst.starts[i];
    }
    if (!seen[inst.goals[i]]) {
      throw ParseError("agent " + std::to_string(i) + ": goal unreachable from start");
    }
  }
}

}  // namespace

Instance::Instance(Graph g, std::vector<VertexId> s, std::vector<VertexId> t)
    : graph(std::move(g)), starts(std::move(s)), goals(std::move(t)) {
  if (starts.size() != goals.size()) {
    throw ParseError("start and goal counts differ");
  }
  num_agents = static_cast<int>(starts.size());
  check_instance(*this);
}

Instance Instance::parse_scenario(std::string_view scen_text, Graph graph, int num_agents) {
  if (num_agents <= 0) throw ParseError("scenario parse error: agent count must be positive");
  std::istringstream in{std::string(scen_text)};
  std::string first;
  if (!std::getline(in, first) || first.rfind("version", 0) != 0) {
    throw ParseError("scenario parse error at line 1: expected version line");
  }

  std::vector<VertexId> starts, goals;
  starts.reserve(num_agents);
  goals.reserve(num_agents);
  std::string line;
  int line_no = 1;
  while (static_cast<int>(starts.size()) < num_agents && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream rec(line);
    int bucket, map_w, map_h, sx, sy, gx, gy;
    std::string map_name;
    double opt_len;  // ignored (see README: the column often disagrees with the map)
    if (!(rec >> bucket >> map_name >> map_w >> map_h >> sx >> sy >> gx >> gy >> opt_len)) {
      throw ParseError("scenario parse error at line " + std::to_string(line_no) +
                       ": malformed record");
    }
    const int agent = static_cast<int>(starts.size());
    const VertexId s = graph.vertex_at(sx, sy);
    const VertexId g = graph.vertex_at(gx, gy);
    if (s == kNoVertex) {
      throw ParseError("scenario parse error at line " + std::to_string(line_no) + ": agent " +
                       std::to_string(agent) + " start (" + std::to_string(sx) + "," +
                       std::to_string(sy) + ") is blocked or out of range");
    }
    if (g == kNoVertex) {
      throw ParseError("scenario parse error at line " + std::to_string(line_no) + ": agent " +
                       std::to_string(agent) + " goal (" + std::to_string(gx) + "," +
                       std::to_string(gy) + ") is blocked or out of range");
    }
    starts.push_back(s);
    goals.push_back(g);
  }
  if (static_cast<int>(starts.size()) < num_agents) {
    throw ParseError("scenario has insufficient records: requested " +
                     std::to_string(num_agents) + ", found " + std::to_string(starts.size()));
  }
  return Instance(std::move(graph), std::move(starts), std::move(goals));
}

}  // namespace mapf
