#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvg/grid.hpp"

namespace hvg {

inline double distance(Vertex a, Vertex b) {
  return std::hypot(static_cast<double>(b.x - a.x),
                    static_cast<double>(b.y - a.y));
}

double polyline_length(std::span<const Vertex> vertices);

/// Ordered lattice polyline with its Euclidean length cached. Used both for
/// grid-search output and for post-processed paths.
class VertexPath {
 public:
  /// Throws std::invalid_argument when empty or when two consecutive vertices
  /// coincide.
  explicit VertexPath(std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  double length() const { return length_; }

  VertexPath reversed() const;

  friend bool operator==(const VertexPath& a, const VertexPath& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Vertex> vertices_;
  double length_ = 0.0;
};

/// Every segment passes los_segment.
bool segments_clear(const GridMap& map, const VertexPath& path);

std::string format_path(const VertexPath& path);

/// v is a ConvexCorner and its obstacle cell lies strictly inside the
/// smaller angle formed by prev -> v -> next (the turn wraps the corner).
bool taut_at(const GridMap& map, Vertex prev, Vertex v, Vertex next);

/// Every intermediate vertex satisfies taut_at.
bool is_taut(const GridMap& map, const VertexPath& path);

}  // namespace hvg
