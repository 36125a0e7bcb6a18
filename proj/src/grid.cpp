#include "hvg/grid.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace hvg {

std::string_view to_string(CornerClass c) {
  switch (c) {
    case CornerClass::NotCorner:
      return "NotCorner";
    case CornerClass::ConvexCorner:
      return "ConvexCorner";
    case CornerClass::ConcaveCorner:
      return "ConcaveCorner";
    case CornerClass::Blocked:
      return "Blocked";
  }
  return "?";
}

std::string to_string(Vertex v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

MapParseError::MapParseError(std::size_t line, std::size_t column,
                             const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

CornerClass classify_pattern(bool nw, bool ne, bool sw, bool se) {
  const int count = int{nw} + int{ne} + int{sw} + int{se};
  switch (count) {
    case 0:
      return CornerClass::NotCorner;
    case 1:
      return CornerClass::ConvexCorner;
    case 2:
      // Diagonal pair pinches the vertex shut; an edge-adjacent pair is a
      // straight wall.
      return (nw && se) || (ne && sw) ? CornerClass::Blocked
                                      : CornerClass::NotCorner;
    case 3:
      return CornerClass::ConcaveCorner;
    default:
      return CornerClass::Blocked;
  }
}

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("cell count does not match dimensions");
  }
  for (auto& c : cells_) c = c != 0 ? 1 : 0;

  corners_.resize(vertex_count());
  for (int y = 0; y <= height_; ++y) {
    for (int x = 0; x <= width_; ++x) {
      corners_[vertex_index({x, y})] = static_cast<std::uint8_t>(
          classify_pattern(blocked(x - 1, y - 1), blocked(x, y - 1),
                           blocked(x - 1, y), blocked(x, y)));
    }
  }
}

GridMap GridMap::empty(int width, int height) {
  return GridMap(width, height,
                 std::vector<std::uint8_t>(
                     static_cast<std::size_t>(width) * std::max(height, 0), 0));
}

std::size_t GridMap::obstacle_count() const {
  std::size_t n = 0;
  for (auto c : cells_) n += c;
  return n;
}

std::vector<Vertex> GridMap::convex_corners() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < corners_.size(); ++i) {
    if (static_cast<CornerClass>(corners_[i]) == CornerClass::ConvexCorner) {
      out.push_back(vertex_at(i));
    }
  }
  return out;
}

CornerClass classify_vertex(const GridMap& map, Vertex v) {
  return map.corner_class(v);
}

namespace {

// Both cells flanking the unit edge from v to v + (1, 0) (horizontal) or
// v + (0, 1) (vertical) are obstacles.
bool horizontal_edge_walled(const GridMap& map, int x, int y) {
  return map.blocked(x, y - 1) && map.blocked(x, y);
}

bool vertical_edge_walled(const GridMap& map, int x, int y) {
  return map.blocked(x - 1, y) && map.blocked(x, y);
}

}  // namespace

bool los_segment(const GridMap& map, Vertex a, Vertex b) {
  if (a == b) return true;
  const int dx = b.x - a.x;
  const int dy = b.y - a.y;

  if (dy == 0) {
    const int lo = std::min(a.x, b.x);
    const int hi = std::max(a.x, b.x);
    for (int x = lo; x < hi; ++x) {
      if (horizontal_edge_walled(map, x, a.y)) return false;
      if (x > lo && map.corner_class({x, a.y}) == CornerClass::Blocked) {
        return false;
      }
    }
    return true;
  }
  if (dx == 0) {
    const int lo = std::min(a.y, b.y);
    const int hi = std::max(a.y, b.y);
    for (int y = lo; y < hi; ++y) {
      if (vertical_edge_walled(map, a.x, y)) return false;
      if (y > lo && map.corner_class({a.x, y}) == CornerClass::Blocked) {
        return false;
      }
    }
    return true;
  }

  // General direction: walk every cell whose interior the segment crosses.
  // The next vertical and horizontal grid lines are compared through the
  // exact parameter ratio |nx - ax| * |dy| versus |ny - ay| * |dx|.
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  const std::int64_t adx = std::abs(dx);
  const std::int64_t ady = std::abs(dy);
  int cx = sx > 0 ? a.x : a.x - 1;
  int cy = sy > 0 ? a.y : a.y - 1;
  for (;;) {
    if (map.blocked(cx, cy)) return false;
    const int nx = sx > 0 ? cx + 1 : cx;
    const int ny = sy > 0 ? cy + 1 : cy;
    const std::int64_t tx = std::abs(std::int64_t{nx} - a.x) * ady;
    const std::int64_t ty = std::abs(std::int64_t{ny} - a.y) * adx;
    if (tx == ty) {
      if (nx == b.x && ny == b.y) return true;
      if (map.corner_class({nx, ny}) == CornerClass::Blocked) return false;
      cx += sx;
      cy += sy;
    } else if (tx < ty) {
      cx += sx;
    } else {
      cy += sy;
    }
  }
}

bool scan_step_clear(const GridMap& map, Vertex v, Direction dir) {
  const Vertex w = step(v, dir);
  if (!map.vertex_in_bounds(v) || !map.vertex_in_bounds(w)) return false;
  switch (dir) {
    case Direction::Right:
      return !map.blocked(v.x, v.y - 1) && !map.blocked(v.x, v.y);
    case Direction::Left:
      return !map.blocked(w.x, v.y - 1) && !map.blocked(w.x, v.y);
    case Direction::Down:
      return !map.blocked(v.x - 1, v.y) && !map.blocked(v.x, v.y);
    case Direction::Up:
      return !map.blocked(v.x - 1, w.y) && !map.blocked(v.x, w.y);
  }
  return false;
}

namespace {

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

int parse_header_int(std::istream& in, std::size_t line_no,
                     std::string_view key) {
  std::string line;
  if (!read_line(in, line)) {
    throw MapParseError(line_no, 1, "missing '" + std::string(key) + "' line");
  }
  std::istringstream ss(line);
  std::string word;
  long long value = 0;
  if (!(ss >> word) || word != key) {
    throw MapParseError(line_no, 1, "expected '" + std::string(key) + "'");
  }
  if (!(ss >> value) || value < 1 || value > (1 << 20)) {
    throw MapParseError(line_no, key.size() + 2,
                        "invalid " + std::string(key) + " value");
  }
  std::string rest;
  if (ss >> rest) {
    throw MapParseError(line_no, 1, "trailing text after " + std::string(key));
  }
  return static_cast<int>(value);
}

}  // namespace

GridMap parse_map(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) throw MapParseError(1, 1, "empty input");
  {
    std::istringstream ss(line);
    std::string word, type;
    if (!(ss >> word >> type) || word != "type") {
      throw MapParseError(1, 1, "expected 'type <name>'");
    }
  }
  const int height = parse_header_int(in, 2, "height");
  const int width = parse_header_int(in, 3, "width");
  if (!read_line(in, line) || line != "map") {
    throw MapParseError(4, 1, "expected 'map'");
  }

  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const std::size_t line_no = 5 + static_cast<std::size_t>(y);
    if (!read_line(in, line)) {
      throw MapParseError(line_no, 1,
                          "map body has " + std::to_string(y) +
                              " rows, header says " + std::to_string(height));
    }
    if (line.size() != static_cast<std::size_t>(width)) {
      throw MapParseError(line_no, std::min(line.size(),
                                            static_cast<std::size_t>(width)) + 1,
                          "row has " + std::to_string(line.size()) +
                              " characters, header says " +
                              std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      const char c = line[static_cast<std::size_t>(x)];
      std::uint8_t value = 0;
      switch (c) {
        case '.':
        case 'G':
        case 'S':
          value = 0;
          break;
        case '@':
        case 'O':
        case 'T':
        case 'W':
          value = 1;
          break;
        default:
          throw MapParseError(line_no, static_cast<std::size_t>(x) + 1,
                              std::string("unknown cell character '") + c +
                                  "'");
      }
      cells[static_cast<std::size_t>(y) * width + x] = value;
    }
  }
  std::size_t line_no = 5 + static_cast<std::size_t>(height);
  while (read_line(in, line)) {
    if (!line.empty()) {
      throw MapParseError(line_no, 1,
                          "map body has more than " + std::to_string(height) +
                              " rows");
    }
    ++line_no;
  }
  return GridMap(width, height, std::move(cells));
}

GridMap parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_map(in);
}

GridMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
  return parse_map(in);
}

void write_map(const GridMap& map, std::ostream& out) {
  out << "type octile\nheight " << map.height() << "\nwidth " << map.width()
      << "\nmap\n";
  std::string row(static_cast<std::size_t>(map.width()), '.');
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      row[static_cast<std::size_t>(x)] = map.blocked(x, y) ? '@' : '.';
    }
    out << row << '\n';
  }
}

std::string serialize_map(const GridMap& map) {
  std::ostringstream out;
  write_map(map, out);
  return out.str();
}

GridMap generate_random_map(int width, int height, double density,
                            std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("density must lie in [0, 1]");
  }
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height);
  for (auto& c : cells) {
    // 53 high bits -> uniform double in [0, 1); portable across standard
    // libraries, unlike the <random> distributions.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    c = u < density ? 1 : 0;
  }
  return GridMap(width, height, std::move(cells));
}

}  // namespace hvg
