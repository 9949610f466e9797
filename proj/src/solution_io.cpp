#include "mapf/solution_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mapf {

SolutionFile to_solution_file(const Instance& instance, const Solution& solution,
                              std::string map_name, uint32_t seed) {
  SolutionFile file;
  file.map_name = std::move(map_name);
  file.num_agents = instance.num_agents;
  file.seed = seed;
  file.flowtime = solution.flowtime;
  file.paths.resize(instance.num_agents);
  for (int i = 0; i < instance.num_agents; ++i) {
    file.paths[i].reserve(solution.configs.size());
    for (const auto& q : solution.configs) {
      file.paths[i].push_back(instance.graph.coord(q[i]));
    }
  }
  return file;
}

Solution solution_from_file(const SolutionFile& file, const Instance& instance) {
  if (file.paths.empty()) throw ParseError("solution file holds no paths");
  const size_t horizon = file.paths[0].size();
  if (horizon == 0) throw ParseError("solution file holds an empty path");
  for (const auto& p : file.paths) {
    if (p.size() != horizon) throw ParseError("solution file paths have ragged lengths");
  }
  std::vector<Config> configs(horizon, Config(file.paths.size()));
  for (size_t i = 0; i < file.paths.size(); ++i) {
    for (size_t t = 0; t < horizon; ++t) {
      const auto [x, y] = file.paths[i][t];
      const VertexId v = instance.graph.vertex_at(x, y);
      if (v == kNoVertex) {
        throw ParseError("solution file: agent " + std::to_string(i) + " visits blocked cell (" +
                         std::to_string(x) + "," + std::to_string(y) + ")");
      }
      configs[t][i] = v;
    }
  }
  return make_solution(std::move(configs), instance.goals);
}

void write_solution_json(std::ostream& out, const SolutionFile& file) {
  nlohmann::json j;
  j["map"] = file.map_name;
  j["n"] = file.num_agents;
  j["seed"] = file.seed;
  j["flowtime"] = file.flowtime;
  auto& paths = j["paths"] = nlohmann::json::array();
  for (const auto& p : file.paths) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& [x, y] : p) row.push_back({x, y});
    paths.push_back(std::move(row));
  }
  out << j.dump(1) << '\n';
}

SolutionFile read_solution_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  SolutionFile file;
  try {
    file.map_name = j.at("map").get<std::string>();
    file.num_agents = j.at("n").get<int>();
    file.seed = j.at("seed").get<uint32_t>();
    file.flowtime = j.at("flowtime").get<int64_t>();
    for (const auto& row : j.at("paths")) {
      auto& p = file.paths.emplace_back();
      for (const auto& xy : row) p.emplace_back(xy.at(0).get<int>(), xy.at(1).get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  return file;
}

void write_solution_text(std::ostream& out, const SolutionFile& file) {
  for (size_t i = 0; i < file.paths.size(); ++i) {
    out << i << ':';
    for (size_t t = 0; t < file.paths[i].size(); ++t) {
      const auto [x, y] = file.paths[i][t];
      out << (t ? "," : "") << '(' << x << ',' << y << ')';
    }
    out << '\n';
  }
}

SolutionFile read_solution_text(std::istream& in) {
  SolutionFile file;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    int agent;
    char c;
    if (!(row >> agent >> c) || c != ':') {
      throw ParseError("solution text: bad agent header at line " + std::to_string(line_no));
    }
    auto& path = file.paths.emplace_back();
    int x, y;
    char comma = ',';
    while (comma == ',' && row >> c && c == '(') {
      if (!(row >> x >> c >> y) || c != ',') break;
      if (!(row >> c) || c != ')') break;
      path.emplace_back(x, y);
      if (!(row >> comma)) comma = '\0';
    }
    if (path.empty()) {
      throw ParseError("solution text: empty path at line " + std::to_string(line_no));
    }
  }
  file.num_agents = static_cast<int>(file.paths.size());
  return file;
}

}  // namespace mapf
