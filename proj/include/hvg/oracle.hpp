#pragma once

// Ground truth for correctness checks: global Euclidean optimum over the full
// visibility graph, the shortest path inside a given homotopy class, and the
// geometric lemma checks used by the property suites. None of this is tuned
// for speed beyond what desk-scale test suites need.

#include <cstddef>
#include <optional>
#include <vector>

#include "hvg/grid.hpp"
#include "hvg/homotopy.hpp"
#include "hvg/path.hpp"
#include "hvg/visibility.hpp"

namespace hvg {

/// Visibility graph over every convex corner of the map plus s and g.
VisibilityGraph full_visibility_graph(const GridMap& map, Vertex s, Vertex g,
                                      unsigned workers = 1);

/// Euclidean-shortest s-g path. Convex corners are generated lazily: only
/// those inside the ellipse |s-c| + |c-g| <= upper_bound are considered, so
/// `upper_bound` must be at least the length of some valid s-g path (any grid
/// path works). Returns nullopt when no path of length <= upper_bound exists.
std::optional<VertexPath> global_optimal_path(const GridMap& map, Vertex s,
                                              Vertex g, double upper_bound);

struct HomotopyOracleOptions {
  /// Cap on search-state expansions.
  std::size_t budget = 2'000'000;
  /// Treat cells that no path of the bound's length can touch as obstacles
  /// when building the ray system. Shortens the words; does not change the
  /// answer.
  bool mask_far_cells = true;
  /// Accept a taut class member found by shortening without searching.
  bool accept_taut_certificate = true;
};

enum class OracleStatus { Found, BudgetExceeded };

struct HomotopyOracleResult {
  OracleStatus status = OracleStatus::BudgetExceeded;
  std::optional<VertexPath> path;
  std::size_t expansions = 0;
  /// Popped keys never decreased.
  bool monotone = true;
  /// Answer came from the tautness certificate rather than the search.
  bool certified = false;
};

/// Shortest path homotopic to `reference`.
///
/// First the reference is shortened with moves that cannot change its class.
/// If that ends in a taut path, it is the answer: each homotopy class holds
/// exactly one locally shortest path. Otherwise pairs (visibility-graph node,
/// reduced crossing word) are searched best-first by length, and the first
/// pair at the goal carrying the reference's word is the class optimum.
/// Paths may revisit corners, so classes that wind around an obstacle are
/// handled.
HomotopyOracleResult homotopy_optimal(const GridMap& map,
                                      const VertexPath& reference,
                                      const HomotopyOracleOptions& options = {});

/// Up to k loopless s-g paths of the graph in non-decreasing length (Yen).
std::vector<VertexPath> k_shortest_simple_paths(const VisibilityGraph& graph,
                                                Vertex s, Vertex g,
                                                std::size_t k);

/// Yen enumeration over the full visibility graph, stopping at the first
/// path homotopic to `reference`. Slow; used to cross-check homotopy_optimal
/// on small maps. nullopt when `max_paths` paths are exhausted first.
std::optional<VertexPath> homotopy_optimal_by_enumeration(
    const GridMap& map, const VertexPath& reference, std::size_t max_paths);

/// For an optimal path with exactly one intermediate vertex v: v lies in the
/// closed box spanned by s and g. nullopt when the path does not have exactly
/// one intermediate vertex.
std::optional<bool> lemma1_check(const VertexPath& optimal);

/// Every intermediate vertex v of `optimal` has a grid-path vertex on its row
/// and one on its column, each joined to v by a lattice run whose unit steps
/// all pass scan_step_clear. On an 8-connected path the lines x = v.x and
/// y = v.y meet the polyline only at vertices, so vertices are the only
/// candidate witnesses.
bool lemma3_check(const GridMap& map, const VertexPath& grid_path,
                  const VertexPath& optimal);

}  // namespace hvg
