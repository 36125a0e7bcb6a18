#pragma once

#include <functional>
#include <vector>

#include "hvg/grid.hpp"

namespace hvg {

/// Every lattice vertex w != u accepted by `wanted` with los_segment(u, w).
///
/// Vertices are visited in growing Chebyshev rings around u. Each blocked
/// cell already passed casts an angular shadow (exact integer directions);
/// a vertex strictly inside a shadow is skipped, anything else is confirmed
/// with los_segment. Cells outside the map shadow too, since no vertex lies
/// beyond them. Once the shadows close the full circle, only the finitely
/// many directions where two shadows merely touch are walked further.
/// Output order is deterministic.
std::vector<Vertex> visible_vertices(const GridMap& map, Vertex u,
                                     const std::function<bool(Vertex)>& wanted);

}  // namespace hvg
