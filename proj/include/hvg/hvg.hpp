#pragma once

// Homotopic visibility graph post-processing.
//
// Every vertex of the input grid path scans up, down, left and right. A scan
// advances one lattice edge at a time while both cells flanking the edge are
// free, and stops at the first convex corner it lands on. Corners reached by
// a horizontal scan from some path vertex and by a vertical scan from some
// (possibly different) path vertex join the graph together with the path's
// own convex corners and its endpoints. The shortest path through the
// visibility graph over that node set is returned.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"
#include "hvg/visibility.hpp"

namespace hvg {

/// First convex corner reached from v (v itself excluded), or nullopt if the
/// scan is blocked or leaves the lattice first.
std::optional<Vertex> cardinal_scan(const GridMap& map, Vertex v,
                                    Direction dir);

/// Hits of the four scans from one vertex, indexed by Direction.
struct ScanHits {
  Vertex origin;
  std::array<std::optional<Vertex>, 4> hits;

  const std::optional<Vertex>& operator[](Direction d) const {
    return hits[static_cast<std::size_t>(d)];
  }
};

ScanHits scan_vertex(const GridMap& map, Vertex v);

/// Sorted, duplicate-free vertex sets gathered from a path.
struct ScanAccumulator {
  std::vector<Vertex> horizontal_hits;
  std::vector<Vertex> vertical_hits;
  /// Start, goal and every convex corner lying on the path.
  std::vector<Vertex> seed_vertices;
};

ScanAccumulator accumulate_scans(const GridMap& map, const VertexPath& path,
                                 unsigned workers = 1);

/// seed_vertices united with horizontal_hits ∩ vertical_hits, sorted.
std::vector<Vertex> collect_hvg_vertices(const GridMap& map,
                                         const VertexPath& path,
                                         unsigned workers = 1);

struct PostprocessResult {
  VertexPath path;
  /// Set when the local graph had no s-g route; `path` is then the input.
  bool fallback_used = false;
  std::size_t graph_nodes = 0;
  std::size_t graph_edges = 0;
};

PostprocessResult hvg_postprocess(const GridMap& map, const VertexPath& path,
                                  unsigned workers = 1);

}  // namespace hvg
