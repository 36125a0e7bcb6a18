#pragma once

// Occupancy grid, lattice-vertex geometry and exact line-of-sight predicates.
//
// Frame: x grows to the right (columns), y grows downward (rows). Cell (cx, cy)
// is the unit square with corners (cx, cy) and (cx + 1, cy + 1). Vertices live
// on the (width + 1) x (height + 1) lattice of cell corners.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hvg {

struct Vertex {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct Cell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class CornerClass : std::uint8_t {
  NotCorner,
  ConvexCorner,
  ConcaveCorner,
  Blocked,
};

enum class Direction : std::uint8_t { Up, Down, Left, Right };

inline constexpr Direction kCardinalDirections[4] = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

constexpr bool is_horizontal(Direction dir) {
  return dir == Direction::Left || dir == Direction::Right;
}

constexpr Vertex step(Vertex v, Direction dir) {
  switch (dir) {
    case Direction::Up:
      return {v.x, v.y - 1};
    case Direction::Down:
      return {v.x, v.y + 1};
    case Direction::Left:
      return {v.x - 1, v.y};
    case Direction::Right:
      return {v.x + 1, v.y};
  }
  return v;
}

std::string_view to_string(CornerClass c);
std::string to_string(Vertex v);

class MapParseError : public std::runtime_error {
 public:
  MapParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Immutable occupancy grid. Corner classes are tabulated at construction so
/// that the hot predicates are plain array reads.
class GridMap {
 public:
  /// `cells` is row-major, non-zero meaning obstacle.
  GridMap(int width, int height, std::vector<std::uint8_t> cells);

  static GridMap empty(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool cell_in_bounds(int cx, int cy) const {
    return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
  }
  bool vertex_in_bounds(Vertex v) const {
    return v.x >= 0 && v.y >= 0 && v.x <= width_ && v.y <= height_;
  }

  /// Out-of-bounds cells read as free.
  bool blocked(int cx, int cy) const {
    return cell_in_bounds(cx, cy) &&
           cells_[static_cast<std::size_t>(cy) * width_ + cx] != 0;
  }

  CornerClass corner_class(Vertex v) const {
    return static_cast<CornerClass>(
        corners_[static_cast<std::size_t>(v.y) * (width_ + 1) + v.x]);
  }

  std::size_t vertex_index(Vertex v) const {
    return static_cast<std::size_t>(v.y) * (width_ + 1) + v.x;
  }
  Vertex vertex_at(std::size_t index) const {
    const auto stride = static_cast<std::size_t>(width_ + 1);
    return {static_cast<int>(index % stride), static_cast<int>(index / stride)};
  }
  std::size_t vertex_count() const {
    return static_cast<std::size_t>(width_ + 1) * (height_ + 1);
  }

  std::span<const std::uint8_t> cells() const { return cells_; }
  std::size_t obstacle_count() const;

  /// All ConvexCorner vertices in row-major order.
  std::vector<Vertex> convex_corners() const;

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.cells_ == b.cells_;
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::uint8_t> corners_;
};

/// Corner class from the four incident cells ordered (NW, NE, SW, SE).
CornerClass classify_pattern(bool nw, bool ne, bool sw, bool se);

CornerClass classify_vertex(const GridMap& map, Vertex v);

/// True iff the open segment (a, b) avoids every obstacle-cell interior, never
/// runs along an edge whose two flanking cells are both obstacles, and never
/// passes through a Blocked vertex. Exact integer arithmetic.
bool los_segment(const GridMap& map, Vertex a, Vertex b);

/// Unit lattice edge from v along dir stays on the lattice and both flanking
/// cells are free (out-of-bounds flanks count as free).
bool scan_step_clear(const GridMap& map, Vertex v, Direction dir);

GridMap parse_map(std::istream& in);
GridMap parse_map(std::string_view text);
GridMap load_map(const std::string& path);

void write_map(const GridMap& map, std::ostream& out);
std::string serialize_map(const GridMap& map);

/// Each cell is an obstacle independently with probability `density`, drawn
/// from a mt19937_64 stream seeded with `seed`.
GridMap generate_random_map(int width, int height, double density,
                            std::uint64_t seed);

}  // namespace hvg

template <>
struct std::hash<hvg::Vertex> {
  std::size_t operator()(const hvg::Vertex& v) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
        static_cast<std::uint32_t>(v.y));
  }
};
