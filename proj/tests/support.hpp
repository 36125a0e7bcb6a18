#pragma once
// Fixtures and independent reference implementations shared by the unit and
// acceptance suites. The oracles here deliberately avoid the library's own
// predicates so that agreement means something.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hvg/bench.hpp"
#include "hvg/grid.hpp"
#include "hvg/homotopy.hpp"
#include "hvg/path.hpp"
#include "hvg/search.hpp"

namespace hvgtest {

using hvg::GridMap;
using hvg::Vertex;
using hvg::VertexPath;

// ------------------------------------------------------------------ fixtures

// Lattice labels: row letter A.. is y = 0.., column number is x.
inline Vertex label(const char* s) { return {s[1] - '0', s[0] - 'A'}; }

inline GridMap example_map() {
  return hvg::parse_map(
      "type octile\nheight 4\nwidth 9\nmap\n"
      "..@......\n"
      ".@@......\n"
      ".....@@@@\n"
      ".....@...\n");
}

inline VertexPath example_grid_path() {
  std::vector<Vertex> v;
  for (const char* l : {"E1", "D2", "D3", "C4", "B5", "B6", "B7", "B8"}) {
    v.push_back(label(l));
  }
  return VertexPath(std::move(v));
}

// Three separate 2x2 blocks A, B, C in a row, like the three obstacles of the
// classic ray-crossing illustration.
inline GridMap three_blocks_map() {
  return hvg::parse_map(
      "type octile\nheight 6\nwidth 14\nmap\n"
      "..............\n"
      "..............\n"
      "..@@..@@..@@..\n"
      "..@@..@@..@@..\n"
      "..............\n"
      "..............\n");
}

// Over A, under B, over C.
inline VertexPath three_blocks_p1() {
  return VertexPath({{0, 3}, {2, 1}, {4, 1}, {6, 5}, {8, 5}, {10, 1}, {12, 1},
                     {14, 3}});
}
// Same class, different route (hugs the map border on the way).
inline VertexPath three_blocks_p2() {
  return VertexPath({{0, 3}, {0, 0}, {5, 0}, {5, 6}, {9, 6}, {9, 0}, {14, 0},
                     {14, 3}});
}
// Over A, under B, under C.
inline VertexPath three_blocks_p3() {
  return VertexPath({{0, 3}, {2, 1}, {4, 1}, {6, 5}, {12, 5}, {14, 3}});
}

// ------------------------------------------------------------------- oracles

inline bool cell_blocked(const GridMap& m, int cx, int cy) {
  return cx >= 0 && cy >= 0 && cx < m.width() && cy < m.height() &&
         m.cells()[static_cast<std::size_t>(cy) * m.width() + cx] != 0;
}

inline bool vertex_pinched(const GridMap& m, int x, int y) {
  const bool nw = cell_blocked(m, x - 1, y - 1);
  const bool ne = cell_blocked(m, x, y - 1);
  const bool sw = cell_blocked(m, x - 1, y);
  const bool se = cell_blocked(m, x, y);
  return (nw && ne && sw && se) || (nw && se && !ne && !sw) ||
         (ne && sw && !nw && !se);
}

// Exhaustive test against every cell: separating axes x, y and the segment
// normal decide whether the open segment meets the open square. Axis-aligned
// segments additionally fail on edges walled on both sides; any segment fails
// on pinched interior lattice points.
inline bool brute_los(const GridMap& m, Vertex a, Vertex b) {
  if (a == b) return true;
  const std::int64_t dx = b.x - a.x;
  const std::int64_t dy = b.y - a.y;
  for (int cy = 0; cy < m.height(); ++cy) {
    for (int cx = 0; cx < m.width(); ++cx) {
      if (!cell_blocked(m, cx, cy)) continue;
      if (std::max(a.x, b.x) <= cx || std::min(a.x, b.x) >= cx + 1) continue;
      if (std::max(a.y, b.y) <= cy || std::min(a.y, b.y) >= cy + 1) continue;
      int pos = 0;
      int neg = 0;
      for (int k = 0; k < 4; ++k) {
        const std::int64_t qx = cx + (k & 1) - a.x;
        const std::int64_t qy = cy + (k >> 1) - a.y;
        const std::int64_t c = dx * qy - dy * qx;
        pos += c > 0;
        neg += c < 0;
      }
      if (pos > 0 && neg > 0) return false;
    }
  }
  const int steps = std::gcd(static_cast<int>(std::abs(dx)),
                             static_cast<int>(std::abs(dy)));
  const int ux = static_cast<int>(dx) / steps;
  const int uy = static_cast<int>(dy) / steps;
  for (int i = 0; i < steps; ++i) {
    const Vertex p{a.x + i * ux, a.y + i * uy};
    if (i > 0 && vertex_pinched(m, p.x, p.y)) return false;
    if (uy == 0) {
      const int cx = std::min(p.x, p.x + ux);
      if (cell_blocked(m, cx, p.y - 1) && cell_blocked(m, cx, p.y)) return false;
    } else if (ux == 0) {
      const int cy = std::min(p.y, p.y + uy);
      if (cell_blocked(m, p.x - 1, cy) && cell_blocked(m, p.x, cy)) return false;
    }
  }
  return true;
}

// Dijkstra over the 8-connected lattice, moves judged by brute_los and
// endpoint pinching.
inline std::optional<double> uniform_cost_length(const GridMap& m, Vertex s,
                                                 Vertex g) {
  const int w = m.width() + 1;
  const int h = m.height() + 1;
  auto id = [&](Vertex v) { return static_cast<std::size_t>(v.y) * w + v.x; };
  std::vector<double> dist(static_cast<std::size_t>(w) * h,
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[id(s)] = 0;
  open.push({0.0, id(s)});
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) continue;
    const Vertex uv{static_cast<int>(u % w), static_cast<int>(u / w)};
    if (uv == g) return d;
    for (int ddy = -1; ddy <= 1; ++ddy) {
      for (int ddx = -1; ddx <= 1; ++ddx) {
        if (!ddx && !ddy) continue;
        const Vertex nv{uv.x + ddx, uv.y + ddy};
        if (nv.x < 0 || nv.y < 0 || nv.x >= w || nv.y >= h) continue;
        if (vertex_pinched(m, nv.x, nv.y) || !brute_los(m, uv, nv)) continue;
        const double nd = d + std::hypot(ddx, ddy);
        if (nd < dist[id(nv)]) {
          dist[id(nv)] = nd;
          open.push({nd, id(nv)});
        }
      }
    }
  }
  return std::nullopt;
}

// Fixed point of every order of adjacent-pair deletions, by exhaustive BFS.
template <class T>
std::set<std::vector<T>> reduction_normal_forms(const std::vector<T>& seq) {
  std::set<std::vector<T>> seen{seq};
  std::set<std::vector<T>> irreducible;
  std::deque<std::vector<T>> queue{seq};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    bool any = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] != cur[i + 1]) continue;
      any = true;
      auto next = cur;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(i),
                 next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
    if (!any) irreducible.insert(cur);
  }
  return irreducible;
}

inline std::size_t flood_fill_components(const GridMap& m) {
  std::vector<char> seen(static_cast<std::size_t>(m.width()) * m.height(), 0);
  std::size_t count = 0;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!cell_blocked(m, x, y) || seen[static_cast<std::size_t>(y) * m.width() + x]) {
        continue;
      }
      ++count;
      std::vector<std::pair<int, int>> stack{{x, y}};
      seen[static_cast<std::size_t>(y) * m.width() + x] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nb) {
          const int nx = cx + d[0];
          const int ny = cy + d[1];
          if (!cell_blocked(m, nx, ny)) continue;
          auto& s = seen[static_cast<std::size_t>(ny) * m.width() + nx];
          if (s) continue;
          s = 1;
          stack.push_back({nx, ny});
        }
      }
    }
  }
  return count;
}

// ---------------------------------------------------------------- instances

struct Instance {
  GridMap map;
  Vertex s;
  Vertex g;
  VertexPath path;
  double density;
};

// Random solvable queries on random maps; densities cycle through the list.
inline std::vector<Instance> random_instances(std::size_t count, int size,
                                              std::vector<double> densities,
                                              std::uint64_t seed,
                                              double weight = 1.0) {
  std::vector<Instance> out;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    const double density = densities[i % densities.size()];
    GridMap map = hvg::generate_random_map(size, size, density, seed * 7919 + i);
    hvg::SamplingOptions opt;
    opt.count = 1;
    opt.seed = seed + i;
    const auto sc = hvg::sample_scenarios(map, "", opt);
    if (sc.empty()) continue;
    hvg::SearchConfig cfg;
    cfg.heuristic_weight = weight;
    auto r = hvg::grid_search(map, sc[0].s, sc[0].g, cfg);
    if (!r.path) continue;
    out.push_back({std::move(map), sc[0].s, sc[0].g, std::move(*r.path), density});
  }
  return out;
}

}  // namespace hvgtest
