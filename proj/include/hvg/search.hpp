#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"

namespace hvg {

class InvalidEndpoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TieBreak : std::uint8_t {
  /// Equal f: larger g first, then lexicographically smaller (x, y).
  HigherG,
};

struct SearchConfig {
  double heuristic_weight = 1.0;
  TieBreak tie_break = TieBreak::HigherG;
};

struct SearchResult {
  std::optional<VertexPath> path;
  std::size_t expansions = 0;
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

/// sqrt(2) * min(|dx|, |dy|) + (max - min). Admissible and consistent for
/// 8-connected unit/diagonal moves.
double octile_heuristic(Vertex a, Vertex b);

/// Unit 8-connected move from a to b is legal: both on the lattice, neither
/// endpoint Blocked, and the move itself has line of sight.
bool legal_move(const GridMap& map, Vertex a, Vertex b);

/// Throws InvalidEndpoint when s or g is off-lattice or Blocked.
void check_endpoints(const GridMap& map, Vertex s, Vertex g);

/// A* (weight 1) or weighted A* over the 8-connected vertex lattice.
/// Closed vertices are never reopened.
SearchResult grid_search(const GridMap& map, Vertex s, Vertex g,
                         const SearchConfig& config = {});

}  // namespace hvg
