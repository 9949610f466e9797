/*
 * map/scenario generator producing MovingAI-format files; used to build
 * local benchmark corpora when the official files are unavailable
 */
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "mapf/mapgen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MAPF map/scenario generator"};
  app.require_subcommand(1);

  auto* map_cmd = app.add_subcommand("map", "generate a map");
  std::string map_type = "random";
  int width = 32, height = 32, corridor = 10;
  double density = 0.2, braid = 0.3;
  uint32_t seed = 0;
  std::string out_path;
  map_cmd->add_option("--type", map_type, "random|maze");
  map_cmd->add_option("--width", width);
  map_cmd->add_option("--height", height);
  map_cmd->add_option("--obstacle-density", density, "random map obstacle fraction");
  map_cmd->add_option("--corridor", corridor, "maze corridor width");
  map_cmd->add_option("--braid", braid, "maze extra-door fraction");
  map_cmd->add_option("--seed", seed);
  map_cmd->add_option("--out", out_path)->required();

  auto* scen_cmd = app.add_subcommand("scen", "generate a scenario for a map");
  std::string map_path;
  int count = 100;
  uint32_t scen_seed = 0;
  std::string scen_out;
  scen_cmd->add_option("--map", map_path)->required();
  scen_cmd->add_option("--count", count, "number of agent records");
  scen_cmd->add_option("--seed", scen_seed);
  scen_cmd->add_option("--out", scen_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (map_cmd->parsed()) {
      std::mt19937 rng(seed);
      mapf::Graph graph;
      if (map_type == "random") {
        graph = mapf::make_random_map(width, height, density, rng);
      } else if (map_type == "maze") {
        graph = mapf::make_maze_map(width, height, corridor, braid, rng);
      } else {
        std::cerr << "unknown map type: " << map_type << "\n";
        return 2;
      }
      std::ofstream out(out_path);
      out << graph.to_map_text();
      std::cout << out_path << ": " << graph.num_vertices() << " vertices\n";
    } else {
      std::ifstream in(map_path, std::ios::binary);
      if (!in) throw mapf::ParseError("cannot read file: " + map_path);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const mapf::Graph graph = mapf::Graph::parse_map(text);
      std::mt19937 rng(scen_seed);
      std::ofstream out(scen_out);
      out << mapf::make_scenario_text(
          graph, std::filesystem::path(map_path).filename().string(), count, rng);
      std::cout << scen_out << ": " << count << " records\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
