/*
 * grid graph and configuration primitives
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mapf {

using VertexId = int32_t;
inline constexpr VertexId kNoVertex = -1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Four-connected grid over passable cells. Vertices get dense ids in
// row-major cell order; the raw cell layout is kept for file I/O and
// heatmaps. from_adjacency() builds non-grid graphs (tests, synthetic
// inputs); those carry a 1xN dummy cell layout.
struct Graph {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> passable;         // width*height cells, 1 = traversable
  std::vector<VertexId> cell_to_vertex;  // width*height, kNoVertex if blocked
  std::vector<int32_t> vertex_to_cell;   // per vertex
  std::vector<std::vector<VertexId>> adjacency;  // symmetric, sorted

  // MovingAI .map text. Throws ParseError naming the offending line.
  static Graph parse_map(std::string_view text);
  static Graph from_cells(int width, int height, std::vector<uint8_t> passable);
  static Graph from_adjacency(int num_vertices,
                              const std::vector<std::pair<VertexId, VertexId>>& edges);

  int num_vertices() const { return static_cast<int>(adjacency.size()); }
  bool in_bounds(int x, int y) const {
    return 0 <= x && x < width && 0 <= y && y < height;
  }
  VertexId vertex_at(int x, int y) const {
    return in_bounds(x, y) ? cell_to_vertex[y * width + x] : kNoVertex;
  }
  std::pair<int, int> coord(VertexId v) const {
    const int cell = vertex_to_cell[v];
    return {cell % width, cell / width};
  }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency[v]; }

  std::string to_map_text() const;
};

// locations of all agents
using Config = std::vector<VertexId>;

struct ConfigHash {
  size_t operator()(const Config& q) const noexcept {
    size_t seed = q.size();
    for (const auto v : q) {
      seed ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

}  // namespace mapf
