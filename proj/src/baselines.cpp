#include "hvg/baselines.hpp"

#include "taut_detail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace hvg {

namespace {

std::int64_t cross(Vertex o, Vertex a, Vertex b) {
  return (std::int64_t{a.x} - o.x) * (std::int64_t{b.y} - o.y) -
         (std::int64_t{a.y} - o.y) * (std::int64_t{b.x} - o.x);
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

std::vector<Vertex> greedy_pass(const GridMap& map,
                                const std::vector<Vertex>& in) {
  std::vector<Vertex> out;
  out.reserve(in.size());
  for (const Vertex w : in) {
    while (out.size() >= 2 && los_segment(map, out[out.size() - 2], w)) {
      out.pop_back();
    }
    if (out.empty() || out.back() != w) out.push_back(w);
  }
  return out;
}

bool in_closed_triangle(Vertex q, Vertex a, Vertex b, Vertex c) {
  const int s1 = sign(cross(a, b, q));
  const int s2 = sign(cross(b, c, q));
  const int s3 = sign(cross(c, a, q));
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

// Strict convex hull, counter-clockwise in (x, y) coordinates.
std::vector<Vertex> convex_hull(std::vector<Vertex> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vertex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vertex p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

namespace detail {

// Separating axis test over the cell's axes and the triangle's edge normals.
bool cell_meets_triangle(int cx, int cy, Vertex a, Vertex b, Vertex c) {
  const int min_x = std::min({a.x, b.x, c.x});
  const int max_x = std::max({a.x, b.x, c.x});
  const int min_y = std::min({a.y, b.y, c.y});
  const int max_y = std::max({a.y, b.y, c.y});
  if (max_x <= cx || min_x >= cx + 1 || max_y <= cy || min_y >= cy + 1) {
    return false;
  }
  const Vertex corners[4] = {{cx, cy}, {cx + 1, cy}, {cx, cy + 1},
                             {cx + 1, cy + 1}};
  const Vertex tri[3] = {a, b, c};
  for (int e = 0; e < 3; ++e) {
    const Vertex p = tri[e];
    const Vertex q = tri[(e + 1) % 3];
    const int inside = sign(cross(p, q, tri[(e + 2) % 3]));
    bool separated = true;
    for (const Vertex k : corners) {
      if (sign(cross(p, q, k)) * inside > 0) {
        separated = false;
        break;
      }
    }
    if (separated) return false;
  }
  return true;
}

std::optional<std::vector<Vertex>> taut_detour(const GridMap& map, Vertex prev,
                                               Vertex v, Vertex next) {
  const int v_side = sign(cross(prev, next, v));
  if (v_side == 0) return std::vector<Vertex>{};

  std::vector<Vertex> pts{prev, next};
  const int x0 = std::max(0, std::min({prev.x, v.x, next.x}));
  const int x1 = std::min(map.width(), std::max({prev.x, v.x, next.x}));
  const int y0 = std::max(0, std::min({prev.y, v.y, next.y}));
  const int y1 = std::min(map.height(), std::max({prev.y, v.y, next.y}));
  for (int cy = y0; cy < y1; ++cy) {
    for (int cx = x0; cx < x1; ++cx) {
      if (!map.blocked(cx, cy) || !cell_meets_triangle(cx, cy, prev, v, next)) {
        continue;
      }
      for (const Vertex q : {Vertex{cx, cy}, Vertex{cx + 1, cy},
                             Vertex{cx, cy + 1}, Vertex{cx + 1, cy + 1}}) {
        if (q == prev || q == next) continue;
        if (sign(cross(prev, next, q)) != v_side) continue;
        if (!in_closed_triangle(q, prev, v, next)) continue;
        pts.push_back(q);
      }
    }
  }
  if (pts.size() == 2) return std::vector<Vertex>{};

  const std::vector<Vertex> hull = convex_hull(std::move(pts));
  const auto ip = std::find(hull.begin(), hull.end(), prev);
  const auto in = std::find(hull.begin(), hull.end(), next);
  if (ip == hull.end() || in == hull.end()) return std::nullopt;
  const std::size_t n = hull.size();
  const std::size_t a = static_cast<std::size_t>(ip - hull.begin());
  const std::size_t b = static_cast<std::size_t>(in - hull.begin());

  // One arc between prev and next is the bare chord; take the other.
  std::vector<Vertex> forward;
  for (std::size_t i = (a + 1) % n; i != b; i = (i + 1) % n) {
    forward.push_back(hull[i]);
  }
  std::vector<Vertex> backward;
  for (std::size_t i = (a + n - 1) % n; i != b; i = (i + n - 1) % n) {
    backward.push_back(hull[i]);
  }
  return forward.size() >= backward.size() ? forward : backward;
}

bool detour_acceptable(const GridMap& map, Vertex prev, Vertex v, Vertex next,
                       const std::vector<Vertex>& detour) {
  std::vector<Vertex> chain{prev};
  chain.insert(chain.end(), detour.begin(), detour.end());
  chain.push_back(next);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!los_segment(map, chain[i - 1], chain[i])) return false;
  }
  for (const Vertex q : detour) {
    if (map.corner_class(q) != CornerClass::ConvexCorner) return false;
  }
  const double before = distance(prev, v) + distance(v, next);
  return polyline_length(chain) < before - 1e-12;
}

bool triangle_free(const GridMap& map, Vertex a, Vertex b, Vertex c) {
  const int x0 = std::max(0, std::min({a.x, b.x, c.x}));
  const int x1 = std::min(map.width(), std::max({a.x, b.x, c.x}));
  const int y0 = std::max(0, std::min({a.y, b.y, c.y}));
  const int y1 = std::min(map.height(), std::max({a.y, b.y, c.y}));
  for (int cy = y0; cy < y1; ++cy) {
    for (int cx = x0; cx < x1; ++cx) {
      if (map.blocked(cx, cy) && cell_meets_triangle(cx, cy, a, b, c)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

VertexPath greedy_postprocess(const GridMap& map, const VertexPath& path) {
  return VertexPath(greedy_pass(map, path.vertices()));
}

VertexPath string_pull(const GridMap& map, const VertexPath& path) {
  std::vector<Vertex> v = greedy_pass(map, path.vertices());
  // Each accepted re-route strictly shortens the path; the cap only guards
  // against pathological inputs.
  const std::size_t max_rounds = 64 * (v.size() + 16);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (taut_at(map, v[i - 1], v[i], v[i + 1])) continue;
      const auto detour = detail::taut_detour(map, v[i - 1], v[i], v[i + 1]);
      if (!detour || !detail::detour_acceptable(map, v[i - 1], v[i], v[i + 1], *detour)) {
        continue;
      }
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), detour->begin(),
               detour->end());
      changed = true;
      break;
    }
    if (!changed) break;
    v = greedy_pass(map, v);
  }
  return VertexPath(std::move(v));
}

SearchResult theta_star(const GridMap& map, Vertex s, Vertex g) {
  check_endpoints(map, s, g);
  SearchResult result;
  if (s == g) {
    result.path = VertexPath({s});
    return result;
  }

  const std::size_t n = map.vertex_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(n, kInf);
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<std::uint8_t> closed(n, 0);

  struct Entry {
    double f;
    double g;
    Vertex v;
  };
  auto order = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return b.v < a.v;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(order)> open(order);
  const std::size_t start = map.vertex_index(s);
  const std::size_t goal = map.vertex_index(g);
  cost[start] = 0.0;
  parent[start] = static_cast<std::uint32_t>(start);
  open.push({distance(s, g), 0.0, s});

  constexpr int kMoves[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    const std::size_t u = map.vertex_index(top.v);
    if (closed[u] || top.g > cost[u]) continue;
    closed[u] = 1;
    ++result.expansions;
    if (u == goal) break;

    const std::size_t pu = parent[u];
    const Vertex pv = map.vertex_at(pu);
    for (const auto& m : kMoves) {
      const Vertex nb{top.v.x + m[0], top.v.y + m[1]};
      if (!legal_move(map, top.v, nb)) continue;
      const std::size_t vi = map.vertex_index(nb);
      if (closed[vi]) continue;
      double ng;
      std::size_t np;
      if (pu != u && los_segment(map, pv, nb)) {
        ng = cost[pu] + distance(pv, nb);
        np = pu;
      } else {
        ng = top.g + distance(top.v, nb);
        np = u;
      }
      if (ng < cost[vi]) {
        cost[vi] = ng;
        parent[vi] = static_cast<std::uint32_t>(np);
        open.push({ng + distance(nb, g), ng, nb});
      }
    }
  }

  if (!closed[goal]) return result;
  std::vector<Vertex> rev;
  for (std::size_t i = goal; i != start; i = parent[i]) {
    rev.push_back(map.vertex_at(i));
  }
  rev.push_back(s);
  std::reverse(rev.begin(), rev.end());
  result.path = VertexPath(std::move(rev));
  return result;
}

}  // namespace hvg
