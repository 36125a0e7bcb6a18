#include "hvg/homotopy.hpp"

#include <algorithm>
#include <tuple>

namespace hvg {

std::vector<ObstacleComponent> obstacle_components(const GridMap& map) {
  const int w = map.width();
  const int h = map.height();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<ObstacleComponent> out;
  std::vector<Cell> stack;

  // Row-major discovery visits each component first at its topmost-leftmost
  // cell, so discovery order already matches the (y, x) representative order.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!map.blocked(x, y) || seen[idx]) continue;
      ObstacleComponent comp;
      comp.id = static_cast<std::uint32_t>(out.size());
      comp.representative = {x, y};
      seen[idx] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        comp.cells.push_back(c);
        constexpr int kNb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : kNb) {
          const int nx = c.x + d[0];
          const int ny = c.y + d[1];
          if (!map.blocked(nx, ny)) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
          if (seen[ni]) continue;
          seen[ni] = 1;
          stack.push_back({nx, ny});
        }
      }
      std::sort(comp.cells.begin(), comp.cells.end(),
                [](Cell a, Cell b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
      out.push_back(std::move(comp));
    }
  }
  return out;
}

RaySystem::RaySystem(const GridMap& map)
    : by_column_(static_cast<std::size_t>(map.width())) {
  const auto comps = obstacle_components(map);
  reps_.reserve(comps.size());
  for (const auto& c : comps) {
    reps_.push_back(c.representative);
    by_column_[static_cast<std::size_t>(c.representative.x)].push_back(c.id);
  }
}

void RaySystem::append_crossings(Vertex a, Vertex b,
                                 CanonicalSequence& out) const {
  if (a.x == b.x) return;
  const std::int64_t dx = b.x - a.x;
  const std::int64_t dy = b.y - a.y;
  auto visit = [&](int cx, std::uint32_t id) {
    const Cell rep = reps_[id];
    // Both sides scaled by 2 * dx: crossing height versus rep height.
    const std::int64_t lhs =
        2 * std::int64_t{a.y} * dx + (2 * std::int64_t{cx} + 1 - 2 * a.x) * dy;
    const std::int64_t rhs = (2 * std::int64_t{rep.y} + 1) * dx;
    if (lhs == rhs) {
      throw InvalidPathError("segment " + to_string(a) + "-" + to_string(b) +
                             " passes through an obstacle representative");
    }
    const bool above = dx > 0 ? lhs < rhs : lhs > rhs;
    out.push_back({id, above ? RaySide::Above : RaySide::Below});
  };

  if (dx > 0) {
    for (int cx = a.x; cx < b.x; ++cx) {
      for (const std::uint32_t id : by_column_[static_cast<std::size_t>(cx)]) {
        visit(cx, id);
      }
    }
  } else {
    for (int cx = a.x - 1; cx >= b.x; --cx) {
      const auto& col = by_column_[static_cast<std::size_t>(cx)];
      for (auto it = col.rbegin(); it != col.rend(); ++it) visit(cx, *it);
    }
  }
}

CanonicalSequence reduce(const CanonicalSequence& seq) {
  CanonicalSequence stack;
  stack.reserve(seq.size());
  for (const RayId r : seq) {
    if (!stack.empty() && stack.back() == r) {
      stack.pop_back();
    } else {
      stack.push_back(r);
    }
  }
  return stack;
}

CanonicalSequence raw_crossings(const RaySystem& rays, const VertexPath& path) {
  CanonicalSequence out;
  const auto& v = path.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) {
    rays.append_crossings(v[i - 1], v[i], out);
  }
  return out;
}

CanonicalSequence canonical_sequence(const GridMap& map, const RaySystem& rays,
                                     const VertexPath& path) {
  if (!segments_clear(map, path)) {
    throw InvalidPathError("path is not collision-free: " + format_path(path));
  }
  return reduce(raw_crossings(rays, path));
}

CanonicalSequence canonical_sequence(const GridMap& map,
                                     const VertexPath& path) {
  return canonical_sequence(map, RaySystem(map), path);
}

bool homotopic(const GridMap& map, const VertexPath& p1, const VertexPath& p2) {
  if (p1.front() != p2.front() || p1.back() != p2.back()) {
    throw std::invalid_argument("homotopy test needs shared endpoints");
  }
  const RaySystem rays(map);
  return canonical_sequence(map, rays, p1) == canonical_sequence(map, rays, p2);
}

}  // namespace hvg
