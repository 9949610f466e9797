#include "mapf/mapgen.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mapf/dist_table.hpp"

namespace mapf {

Graph make_random_map(int width, int height, double density, std::mt19937& rng) {
  std::vector<uint8_t> cells(static_cast<size_t>(width) * height, 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (auto& cell : cells) cell = coin(rng) < density ? 0 : 1;
  if (std::find(cells.begin(), cells.end(), 1) == cells.end()) cells[0] = 1;
  return Graph::from_cells(width, height, std::move(cells));
}

Graph make_maze_map(int width, int height, int corridor, double braid, std::mt19937& rng) {
  if (corridor < 1) throw std::invalid_argument("corridor width must be positive");
  const int pitch = corridor + 1;
  const auto band_of = [&](int x) { return x / pitch; };           // room band index
  const auto is_wall_line = [&](int x) { return x % pitch == corridor; };
  const int rooms_x = band_of(width - 1) + 1;
  const int rooms_y = band_of(height - 1) + 1;

  std::vector<uint8_t> cells(static_cast<size_t>(width) * height, 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (is_wall_line(x) || is_wall_line(y)) cells[y * width + x] = 0;
    }
  }

  // wall segment between two horizontally or vertically adjacent rooms
  const auto carve = [&](int rx, int ry, bool horizontal) {
    if (horizontal) {  // door between (rx, ry) and (rx + 1, ry)
      const int x = rx * pitch + corridor;
      for (int y = ry * pitch; y < std::min(ry * pitch + corridor, height); ++y) {
        if (!is_wall_line(y)) cells[y * width + x] = 1;
      }
    } else {  // door between (rx, ry) and (rx, ry + 1)
      const int y = ry * pitch + corridor;
      for (int x = rx * pitch; x < std::min(rx * pitch + corridor, width); ++x) {
        if (!is_wall_line(x)) cells[y * width + x] = 1;
      }
    }
  };

  // random DFS spanning tree over the room lattice
  struct Wall {
    int rx, ry;
    bool horizontal;
  };
  std::vector<uint8_t> visited(static_cast<size_t>(rooms_x) * rooms_y, 0);
  std::vector<int> stack{0};
  visited[0] = 1;
  std::vector<Wall> closed_walls;
  std::vector<std::pair<int, Wall>> options;
  while (!stack.empty()) {
    const int room = stack.back();
    const int rx = room % rooms_x, ry = room / rooms_x;
    options.clear();
    if (rx + 1 < rooms_x && !visited[room + 1]) options.push_back({room + 1, {rx, ry, true}});
    if (rx > 0 && !visited[room - 1]) options.push_back({room - 1, {rx - 1, ry, true}});
    if (ry + 1 < rooms_y && !visited[room + rooms_x]) {
      options.push_back({room + rooms_x, {rx, ry, false}});
    }
    if (ry > 0 && !visited[room - rooms_x]) {
      options.push_back({room - rooms_x, {rx, ry - 1, false}});
    }
    if (options.empty()) {
      stack.pop_back();
      continue;
    }
    const auto& [next, wall] = options[std::uniform_int_distribution<size_t>(
        0, options.size() - 1)(rng)];
    carve(wall.rx, wall.ry, wall.horizontal);
    visited[next] = 1;
    stack.push_back(next);
  }
  // collect walls that stayed closed and braid a fraction of them
  for (int ry = 0; ry < rooms_y; ++ry) {
    for (int rx = 0; rx < rooms_x; ++rx) {
      if (rx + 1 < rooms_x) closed_walls.push_back({rx, ry, true});
      if (ry + 1 < rooms_y) closed_walls.push_back({rx, ry, false});
    }
  }
  std::shuffle(closed_walls.begin(), closed_walls.end(), rng);
  const size_t extra = static_cast<size_t>(braid * closed_walls.size());
  for (size_t k = 0; k < extra && k < closed_walls.size(); ++k) {
    carve(closed_walls[k].rx, closed_walls[k].ry, closed_walls[k].horizontal);
  }
  return Graph::from_cells(width, height, std::move(cells));
}

namespace {

std::vector<VertexId> largest_component(const Graph& g) {
  std::vector<int32_t> label(g.num_vertices(), -1);
  int32_t best_label = -1;
  size_t best_size = 0;
  int32_t next = 0;
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != -1) continue;
    queue.clear();
    queue.push_back(s);
    label[s] = next;
    for (size_t head = 0; head < queue.size(); ++head) {
      for (const VertexId u : g.neighbors(queue[head])) {
        if (label[u] == -1) {
          label[u] = next;
          queue.push_back(u);
        }
      }
    }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best_label = next;
    }
    ++next;
  }
  std::vector<VertexId> component;
  component.reserve(best_size);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (label[v] == best_label) component.push_back(v);
  }
  return component;
}

}  // namespace

std::string make_scenario_text(const Graph& graph, std::string_view map_name, int count,
                               std::mt19937& rng) {
  std::vector<VertexId> component = largest_component(graph);
  if (static_cast<int>(component.size()) < count) {
    throw std::invalid_argument("largest component smaller than the requested agent count");
  }
  std::vector<VertexId> starts = component;
  std::shuffle(starts.begin(), starts.end(), rng);
  starts.resize(count);
  std::vector<VertexId> goals = component;
  std::shuffle(goals.begin(), goals.end(), rng);
  goals.resize(count);

  DistTable dist(graph);
  std::ostringstream out;
  out << "version 1\n";
  for (int i = 0; i < count; ++i) {
    const auto [sx, sy] = graph.coord(starts[i]);
    const auto [gx, gy] = graph.coord(goals[i]);
    out << 0 << '\t' << map_name << '\t' << graph.width << '\t' << graph.height << '\t' << sx
        << '\t' << sy << '\t' << gx << '\t' << gy << '\t' << dist.dist(starts[i], goals[i])
        << '\n';
  }
  return out.str();
}

}  // namespace mapf
