/*
 * solution file formats: JSON for programmatic use, plain text for
 * third-party visualizers
 */
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/lacam.hpp"

namespace mapf {

struct SolutionFile {
  std::string map_name;
  int num_agents = 0;
  uint32_t seed = 0;
  int64_t flowtime = -1;  // -1 = unknown (text format carries none)
  std::vector<std::vector<std::pair<int, int>>> paths;  // per agent, (x, y) per timestep
};

SolutionFile to_solution_file(const Instance& instance, const Solution& solution,
                              std::string map_name, uint32_t seed);
// maps coordinates back to vertices; throws ParseError on blocked cells or
// ragged/empty paths
Solution solution_from_file(const SolutionFile& file, const Instance& instance);

void write_solution_json(std::ostream& out, const SolutionFile& file);
SolutionFile read_solution_json(std::istream& in);

// one line per agent: "id:(x,y),(x,y),..."
void write_solution_text(std::ostream& out, const SolutionFile& file);
SolutionFile read_solution_text(std::istream& in);

}  // namespace mapf
