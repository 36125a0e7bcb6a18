#pragma once

#include <optional>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"
#include "hvg/search.hpp"

namespace hvg {

/// Drops the middle vertex of any consecutive triple whose outer vertices
/// see each other, until no such triple is left. Output is a subsequence of
/// the input.
VertexPath greedy_postprocess(const GridMap& map, const VertexPath& path);

/// String pulling. Alternates greedy removal with re-routing each non-taut
/// vertex v (neighbours a, b) around the obstacle corners that block the
/// chord a-b inside triangle (a, v, b): the replacement is the convex chain
/// from a to b over those corners on v's side, which keeps the homotopy
/// class. Iterates until every intermediate vertex is a taut convex corner or
/// no re-route shortens the path.
VertexPath string_pull(const GridMap& map, const VertexPath& path);

/// Basic Theta* on the 8-connected vertex lattice: a successor inherits the
/// expanded vertex's parent whenever the two see each other. Straight-line
/// heuristic, same tie-breaking as grid_search.
SearchResult theta_star(const GridMap& map, Vertex s, Vertex g);

}  // namespace hvg
