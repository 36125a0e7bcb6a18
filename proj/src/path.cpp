#include "hvg/path.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace hvg {

double polyline_length(std::span<const Vertex> vertices) {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    total += distance(vertices[i - 1], vertices[i]);
  }
  return total;
}

VertexPath::VertexPath(std::vector<Vertex> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) {
    throw std::invalid_argument("a path needs at least one vertex");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i - 1]) {
      throw std::invalid_argument("consecutive path vertices coincide at " +
                                  to_string(vertices_[i]));
    }
  }
  length_ = polyline_length(vertices_);
}

VertexPath VertexPath::reversed() const {
  std::vector<Vertex> r(vertices_.rbegin(), vertices_.rend());
  return VertexPath(std::move(r));
}

bool segments_clear(const GridMap& map, const VertexPath& path) {
  const auto& v = path.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!map.vertex_in_bounds(v[i - 1]) || !map.vertex_in_bounds(v[i]) ||
        !los_segment(map, v[i - 1], v[i])) {
      return false;
    }
  }
  return map.vertex_in_bounds(v.front());
}

std::string format_path(const VertexPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += to_string(path[i]);
  }
  return out;
}

namespace {

std::int64_t cross(std::int64_t ax, std::int64_t ay, std::int64_t bx,
                   std::int64_t by) {
  return ax * by - ay * bx;
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

}  // namespace

bool taut_at(const GridMap& map, Vertex prev, Vertex v, Vertex next) {
  if (map.corner_class(v) != CornerClass::ConvexCorner) return false;
  int ox = 0;
  int oy = 0;
  for (const auto& [dx, dy] : {std::pair{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}) {
    if (map.blocked(dx < 0 ? v.x - 1 : v.x, dy < 0 ? v.y - 1 : v.y)) {
      ox = dx;
      oy = dy;
    }
  }
  const std::int64_t ux = prev.x - v.x, uy = prev.y - v.y;
  const std::int64_t wx = next.x - v.x, wy = next.y - v.y;
  const int turn = sign(cross(ux, uy, wx, wy));
  if (turn == 0) return false;
  return sign(cross(ux, uy, ox, oy)) == turn &&
         sign(cross(ox, oy, wx, wy)) == turn;
}

bool is_taut(const GridMap& map, const VertexPath& path) {
  const auto& v = path.vertices();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!taut_at(map, v[i - 1], v[i], v[i + 1])) return false;
  }
  return true;
}

}  // namespace hvg
