#include "hvg/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hvg {

double octile_heuristic(Vertex a, Vertex b) {
  const int dx = std::abs(b.x - a.x);
  const int dy = std::abs(b.y - a.y);
  const int lo = std::min(dx, dy);
  const int hi = std::max(dx, dy);
  return kSqrt2 * lo + (hi - lo);
}

bool legal_move(const GridMap& map, Vertex a, Vertex b) {
  const int dx = b.x - a.x;
  const int dy = b.y - a.y;
  if ((dx == 0 && dy == 0) || std::abs(dx) > 1 || std::abs(dy) > 1) {
    return false;
  }
  if (!map.vertex_in_bounds(a) || !map.vertex_in_bounds(b)) return false;
  if (map.corner_class(a) == CornerClass::Blocked ||
      map.corner_class(b) == CornerClass::Blocked) {
    return false;
  }
  if (dx != 0 && dy != 0) {
    return !map.blocked(std::min(a.x, b.x), std::min(a.y, b.y));
  }
  if (dy == 0) {
    const int x = std::min(a.x, b.x);
    return !(map.blocked(x, a.y - 1) && map.blocked(x, a.y));
  }
  const int y = std::min(a.y, b.y);
  return !(map.blocked(a.x - 1, y) && map.blocked(a.x, y));
}

void check_endpoints(const GridMap& map, Vertex s, Vertex g) {
  for (const Vertex v : {s, g}) {
    if (!map.vertex_in_bounds(v)) {
      throw InvalidEndpoint("endpoint " + to_string(v) + " is off the lattice");
    }
    if (map.corner_class(v) == CornerClass::Blocked) {
      throw InvalidEndpoint("endpoint " + to_string(v) + " is a blocked vertex");
    }
  }
}

namespace {

struct OpenEntry {
  double f;
  double g;
  Vertex v;
};

// priority_queue pops the "largest"; order so that the preferred entry is
// largest: smaller f, then larger g, then lexicographically smaller vertex.
struct OpenOrder {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return b.v < a.v;
  }
};

constexpr int kMoves[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                              {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

SearchResult grid_search(const GridMap& map, Vertex s, Vertex g,
                         const SearchConfig& config) {
  check_endpoints(map, s, g);
  if (!(config.heuristic_weight >= 1.0)) {
    throw std::invalid_argument("heuristic weight must be >= 1");
  }
  SearchResult result;
  if (s == g) {
    result.path = VertexPath({s});
    return result;
  }

  const double w = config.heuristic_weight;
  const std::size_t n = map.vertex_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(n, kInf);
  std::vector<std::uint32_t> parent(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint8_t> closed(n, 0);

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  const std::size_t start = map.vertex_index(s);
  const std::size_t goal = map.vertex_index(g);
  cost[start] = 0.0;
  open.push({w * octile_heuristic(s, g), 0.0, s});

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const std::size_t u = map.vertex_index(top.v);
    if (closed[u] || top.g > cost[u]) continue;
    closed[u] = 1;
    ++result.expansions;
    if (u == goal) break;

    for (const auto& m : kMoves) {
      const Vertex nb{top.v.x + m[0], top.v.y + m[1]};
      if (!legal_move(map, top.v, nb)) continue;
      const std::size_t vi = map.vertex_index(nb);
      if (closed[vi]) continue;
      const double step_cost = (m[0] != 0 && m[1] != 0) ? kSqrt2 : 1.0;
      const double ng = top.g + step_cost;
      if (ng < cost[vi]) {
        cost[vi] = ng;
        parent[vi] = static_cast<std::uint32_t>(u);
        open.push({ng + w * octile_heuristic(nb, g), ng, nb});
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
