#pragma once

// Homotopy-class fingerprints from vertical ray crossings.
//
// Each 4-connected obstacle component gets one representative point, the
// centre of its topmost-then-leftmost cell. The vertical line through that
// point is split into an upper ray (y < rep.y, towards row 0) and a lower
// ray. A path's canonical sequence lists the rays it crosses in order; two
// paths with the same endpoints are homotopic iff their reduced sequences
// match.
//
// Several representatives can share a column. Their rays are treated as if
// shifted right by an infinitesimal amount that grows with component id, so
// a segment travelling right crosses same-column rays in increasing id order
// and a segment travelling left in decreasing order.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"

namespace hvg {

struct ObstacleComponent {
  std::uint32_t id = 0;
  std::vector<Cell> cells;
  /// Point (representative.x + 1/2, representative.y + 1/2).
  Cell representative;
};

enum class RaySide : std::uint8_t { Above, Below };

struct RayId {
  std::uint32_t component = 0;
  RaySide side = RaySide::Above;

  friend auto operator<=>(const RayId&, const RayId&) = default;
};

using CanonicalSequence = std::vector<RayId>;

class InvalidPathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maximal 4-connected obstacle regions ordered by representative (y, x).
std::vector<ObstacleComponent> obstacle_components(const GridMap& map);

/// Precomputed ray layout for one map, indexed by column for fast segment
/// crossing queries.
class RaySystem {
 public:
  explicit RaySystem(const GridMap& map);

  std::size_t component_count() const { return reps_.size(); }
  Cell representative(std::uint32_t id) const { return reps_[id]; }

  /// Appends the rays crossed by segment a -> b, in crossing order.
  void append_crossings(Vertex a, Vertex b, CanonicalSequence& out) const;

 private:
  std::vector<Cell> reps_;
  // ids of representatives per column, ascending.
  std::vector<std::vector<std::uint32_t>> by_column_;
};

/// Free cancellation of adjacent equal ray ids until none remain.
CanonicalSequence reduce(const CanonicalSequence& seq);

/// Unreduced crossing sequence of a path.
CanonicalSequence raw_crossings(const RaySystem& rays, const VertexPath& path);

/// Reduced canonical sequence. Throws InvalidPathError if a segment lacks
/// line of sight.
CanonicalSequence canonical_sequence(const GridMap& map, const RaySystem& rays,
                                     const VertexPath& path);
CanonicalSequence canonical_sequence(const GridMap& map,
                                     const VertexPath& path);

/// Throws std::invalid_argument when the endpoints differ and
/// InvalidPathError when either path collides.
bool homotopic(const GridMap& map, const VertexPath& p1, const VertexPath& p2);

}  // namespace hvg
