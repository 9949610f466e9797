/*
 * benchmark-class map and scenario synthesis
 */
#pragma once

#include <random>
#include <string>
#include <string_view>

#include "mapf/graph.hpp"

namespace mapf {


// each cell blocked independently with probability `density`
Graph make_random_map(int width, int height, double density, std::mt19937& rng);

// square rooms of side `corridor` separated by unit walls; a random
// spanning tree of rooms is carved open, then `braid` of the remaining
// walls as extra loops
Graph make_maze_map(int width, int height, int corridor, double braid, std::mt19937& rng);

// MovingAI version-1 scenario: `count` agents with pairwise-distinct starts
// and pairwise-distinct goals sampled from the largest connected component
std::string make_scenario_text(const Graph& graph, std::string_view map_name, int count,
                               std::mt19937& rng);

}  // namespace mapf
