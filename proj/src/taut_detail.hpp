#pragma once

// Geometry shared by string pulling and the homotopy oracle.

#include <optional>
#include <vector>

#include "hvg/grid.hpp"

namespace hvg::detail {

/// Open unit cell (cx, cy) and the open triangle (a, b, c) overlap.
bool cell_meets_triangle(int cx, int cy, Vertex a, Vertex b, Vertex c);

/// No obstacle cell meets the open triangle (a, b, c).
bool triangle_free(const GridMap& map, Vertex a, Vertex b, Vertex c);

/// Convex chain from prev to next around the obstacle material inside
/// triangle (prev, v, next), interior vertices only.
std::optional<std::vector<Vertex>> taut_detour(const GridMap& map, Vertex prev,
                                               Vertex v, Vertex next);

/// Chain segments all have line of sight, its vertices are convex corners,
/// and it is strictly shorter than prev -> v -> next.
bool detour_acceptable(const GridMap& map, Vertex prev, Vertex v, Vertex next,
                       const std::vector<Vertex>& detour);

}  // namespace hvg::detail
