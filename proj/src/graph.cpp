#include "mapf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mapf {

namespace {

// Splits into lines, tolerating trailing '\r' from CRLF files.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return lines;
}

bool parse_int_field(std::string_view line, std::string_view key, int& out) {
  if (line.substr(0, key.size()) != key) return false;
  std::string_view rest = line.substr(key.size());
  size_t i = 0;
  while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
  rest = rest.substr(i);
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), out);
  return ec == std::errc() && ptr == rest.data() + rest.size();
}

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw ParseError("map parse error at line " + std::to_string(line_no + 1) + ": " + what);
}

}  // namespace

Graph Graph::parse_map(std::string_view text) {
  const auto lines = split_lines(text);
  size_t ln = 0;
  auto next_line = [&]() -> std::string_view {
    while (ln < lines.size() && lines[ln].empty()) ++ln;
    if (ln >= lines.size()) fail(lines.size() - 1, "unexpected end of file");
    return lines[ln];
  };

  int width = -1, height = -1;
  // optional "type ..." line, then height/width in either order, then "map"
  for (;;) {
    std::string_view line = next_line();
    int value = 0;
    if (line.substr(0, 4) == "type") {
      ++ln;
    } else if (parse_int_field(line, "height", value)) {
      height = value;
      ++ln;
    } else if (parse_int_field(line, "width", value)) {
      width = value;
      ++ln;
    } else if (line == "map") {
      ++ln;
      break;
    } else {
      fail(ln, "expected header field, got \"" + std::string(line) + "\"");
    }
  }
  if (width <= 0 || height <= 0) {
    fail(ln - 1, "header must declare positive width and height");
  }

  Graph g;
  g.width = width;
  g.height = height;
  g.passable.assign(static_cast<size_t>(width) * height, 0);
  for (int y = 0; y < height; ++y, ++ln) {
    if (ln >= lines.size()) fail(lines.size() - 1, "missing map row " + std::to_string(y));
    std::string_view row = lines[ln];
    if (static_cast<int>(row.size()) != width) {
      fail(ln, "row has " + std::to_string(row.size()) + " cells, expected " +
                   std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      switch (row[x]) {
        case '.':
        case 'G':
          g.passable[y * width + x] = 1;
          break;
        case '@':
        case 'T':
        case 'O':
        case 'S':
        case 'W':
          break;
        default:
          fail(ln, std::string("unknown map character '") + row[x] + "'");
      }
    }
  }
  for (; ln < lines.size(); ++ln) {
    if (!lines[ln].empty()) fail(ln, "trailing content after map rows");
  }
  if (std::find(g.passable.begin(), g.passable.end(), 1) == g.passable.end()) {
    throw ParseError("map parse error: no passable cells");
  }
  return from_cells(width, height, std::move(g.passable));
}

Graph Graph::from_cells(int width, int height, std::vector<uint8_t> passable) {
  if (width <= 0 || height <= 0 ||
      passable.size() != static_cast<size_t>(width) * height) {
    throw std::invalid_argument("bad cell grid dimensions");
  }
  Graph g;
  g.width = width;
  g.height = height;
  g.passable = std::move(passable);
  g.cell_to_vertex.assign(g.passable.size(), kNoVertex);
  for (size_t cell = 0; cell < g.passable.size(); ++cell) {
    if (g.passable[cell]) {
      g.cell_to_vertex[cell] = static_cast<VertexId>(g.vertex_to_cell.size());
      g.vertex_to_cell.push_back(static_cast<int32_t>(cell));
    }
  }
  if (g.vertex_to_cell.empty()) throw std::invalid_argument("cell grid has no passable cells");

  g.adjacency.resize(g.vertex_to_cell.size());
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto [x, y] = g.coord(v);
    for (int k = 0; k < 4; ++k) {
      const VertexId u = g.vertex_at(x + dx[k], y + dy[k]);
      if (u != kNoVertex) g.adjacency[v].push_back(u);
    }
    std::sort(g.adjacency[v].begin(), g.adjacency[v].end());
  }
  return g;
}

Graph Graph::from_adjacency(int num_vertices,
                            const std::vector<std::pair<VertexId, VertexId>>& edges) {
  if (num_vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
  Graph g;
  g.width = num_vertices;
  g.height = 1;
  g.passable.assign(num_vertices, 1);
  g.cell_to_vertex.resize(num_vertices);
  g.vertex_to_cell.resize(num_vertices);
  for (int v = 0; v < num_vertices; ++v) {
    g.cell_to_vertex[v] = v;
    g.vertex_to_cell[v] = v;
  }
  g.adjacency.resize(num_vertices);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices || a == b) {
      throw std::invalid_argument("bad edge in adjacency list");
    }
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

std::string Graph::to_map_text() const {
  std::ostringstream out;
  out << "type octile\n"
      << "height " << height << "\n"
      << "width " << width << "\n"
      << "map\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out << (passable[y * width + x] ? '.' : '@');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mapf
