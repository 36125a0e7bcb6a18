#include "hvg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hvg/baselines.hpp"
#include "hvg/shadow.hpp"
#include "taut_detail.hpp"

namespace hvg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

// Lazily computed visible-node lists over a fixed node set.
class NodeVisibility {
 public:
  NodeVisibility(const GridMap& map, std::vector<Vertex> nodes)
      : map_(map),
        nodes_(std::move(nodes)),
        node_at_(map.vertex_count(), -1),
        lists_(nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      node_at_[map.vertex_index(nodes_[i])] = static_cast<std::int32_t>(i);
    }
  }

  const std::vector<Vertex>& nodes() const { return nodes_; }

  const std::vector<std::uint32_t>& visible_from(std::uint32_t u) {
    auto& slot = lists_[u];
    if (!slot) {
      slot.emplace();
      const auto seen = visible_vertices(map_, nodes_[u], [&](Vertex w) {
        return node_at_[map_.vertex_index(w)] >= 0;
      });
      for (const Vertex w : seen) {
        slot->push_back(static_cast<std::uint32_t>(node_at_[map_.vertex_index(w)]));
      }
    }
    return *slot;
  }

 private:
  const GridMap& map_;
  std::vector<Vertex> nodes_;
  std::vector<std::int32_t> node_at_;
  std::vector<std::optional<std::vector<std::uint32_t>>> lists_;
};

// s, g and every convex corner c with |s-c| + |c-g| <= bound.
std::vector<Vertex> ellipse_nodes(const GridMap& map, Vertex s, Vertex g,
                                  double bound) {
  std::vector<Vertex> out{s, g};
  const double cx = 0.5 * (s.x + g.x);
  const double cy = 0.5 * (s.y + g.y);
  const double r = 0.5 * bound + 1.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
  const int x1 = std::min(map.width(), static_cast<int>(std::ceil(cx + r)));
  const int y1 = std::min(map.height(), static_cast<int>(std::ceil(cy + r)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Vertex v{x, y};
      if (v == s || v == g) continue;
      if (map.corner_class(v) != CornerClass::ConvexCorner) continue;
      if (distance(s, v) + distance(v, g) <= bound + kEps) out.push_back(v);
    }
  }
  if (s == g) out.pop_back();
  return out;
}

struct QueueEntry {
  double f;
  double g;
  std::uint64_t state;
};

struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.state > b.state;
  }
};

// Reduced words over ray letters, interned as nodes of a trie. Appending the
// word's own last letter cancels it, which moves back to the parent node.
class WordTrie {
 public:
  static constexpr std::uint32_t kEmpty = 0;

  WordTrie() : nodes_{{0, 0}} {}

  std::uint32_t append(std::uint32_t word, RayId r) {
    const std::uint32_t letter = r.component * 2 +
                                 (r.side == RaySide::Above ? 0u : 1u);
    if (word != kEmpty && nodes_[word].letter == letter) {
      return nodes_[word].parent;
    }
    const std::uint64_t key = (std::uint64_t{word} << 32) | letter;
    const auto [it, inserted] =
        children_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back({word, letter});
    return it->second;
  }

  std::uint32_t append(std::uint32_t word, const CanonicalSequence& seq) {
    for (const RayId r : seq) word = append(word, r);
    return word;
  }

 private:
  struct Node {
    std::uint32_t parent;
    std::uint32_t letter;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> children_;
};

// Diagonal direction from a convex corner towards its obstacle cell.
Vertex obstacle_direction(const GridMap& map, Vertex v) {
  if (map.blocked(v.x - 1, v.y - 1)) return {-1, -1};
  if (map.blocked(v.x, v.y - 1)) return {1, -1};
  if (map.blocked(v.x - 1, v.y)) return {-1, 1};
  return {1, 1};
}

// A path can only bend tautly at corner v if the line through v along d
// touches v's obstacle cell without entering it on either side.
bool tangent_at(const GridMap& map, Vertex v, Vertex d) {
  const Vertex o = obstacle_direction(map, v);
  auto inside = [&](int dx, int dy) { return dx * o.x > 0 && dy * o.y > 0; };
  return !inside(d.x, d.y) && !inside(-d.x, -d.y);
}

GridMap mask_far_cells(const GridMap& map, Vertex s, Vertex g, double bound) {
  std::vector<std::uint8_t> cells(map.cells().begin(), map.cells().end());
  // Any point q of a cell is within sqrt(2)/2 of its centre c, so
  // |s-q| + |q-g| >= |s-c| + |c-g| - sqrt(2).
  const double limit = bound + 1e-6 + std::sqrt(2.0);
  for (int cy = 0; cy < map.height(); ++cy) {
    for (int cx = 0; cx < map.width(); ++cx) {
      const double px = cx + 0.5;
      const double py = cy + 0.5;
      const double d = std::hypot(px - s.x, py - s.y) + std::hypot(px - g.x, py - g.y);
      if (d > limit) cells[static_cast<std::size_t>(cy) * map.width() + cx] = 1;
    }
  }
  return GridMap(map.width(), map.height(), std::move(cells));
}

// Shortens a path without leaving its homotopy class: a vertex is dropped
// only when the triangle it spans with its neighbours holds no obstacle, and
// re-routes wrap the obstacle material inside that triangle.
std::vector<Vertex> tauten_in_class(const GridMap& map, std::vector<Vertex> v) {
  auto safe_greedy = [&](const std::vector<Vertex>& in) {
    std::vector<Vertex> out;
    for (const Vertex w : in) {
      while (out.size() >= 2) {
        const Vertex a = out[out.size() - 2];
        const Vertex b = out.back();
        if (!los_segment(map, a, w) || !detail::triangle_free(map, a, b, w)) break;
        out.pop_back();
      }
      if (out.empty() || out.back() != w) out.push_back(w);
    }
    return out;
  };
  v = safe_greedy(v);
  const std::size_t max_rounds = 64 * (v.size() + 16);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (taut_at(map, v[i - 1], v[i], v[i + 1])) continue;
      const auto detour = detail::taut_detour(map, v[i - 1], v[i], v[i + 1]);
      if (!detour ||
          !detail::detour_acceptable(map, v[i - 1], v[i], v[i + 1], *detour)) {
        continue;
      }
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), detour->begin(),
               detour->end());
      changed = true;
      break;
    }
    if (!changed) break;
    v = safe_greedy(v);
  }
  return v;
}

}  // namespace

VisibilityGraph full_visibility_graph(const GridMap& map, Vertex s, Vertex g,
                                      unsigned workers) {
  check_endpoints(map, s, g);
  std::vector<Vertex> nodes = map.convex_corners();
  nodes.push_back(s);
  nodes.push_back(g);
  return build_visibility_graph(map, nodes, workers);
}

std::optional<VertexPath> global_optimal_path(const GridMap& map, Vertex s,
                                              Vertex g, double upper_bound) {
  check_endpoints(map, s, g);
  if (s == g) return VertexPath({s});
  if (distance(s, g) > upper_bound + kEps) return std::nullopt;
  if (los_segment(map, s, g)) return VertexPath({s, g});

  NodeVisibility vis(map, ellipse_nodes(map, s, g, upper_bound));
  const auto& nodes = vis.nodes();
  const std::size_t n = nodes.size();
  std::vector<double> cost(n, kInf);
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<std::uint8_t> closed(n, 0);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> open;
  cost[0] = 0.0;
  open.push({distance(s, g), 0.0, 0});
  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    const auto u = static_cast<std::uint32_t>(top.state);
    if (closed[u] || top.g > cost[u]) continue;
    closed[u] = 1;
    if (u == 1) break;
    const Vertex uv = nodes[u];
    for (const std::uint32_t v : vis.visible_from(u)) {
      if (closed[v]) continue;
      const double ng = top.g + distance(uv, nodes[v]);
      if (ng >= cost[v] || ng + distance(nodes[v], g) > upper_bound + kEps) {
        continue;
      }
      cost[v] = ng;
      parent[v] = u;
      open.push({ng + distance(nodes[v], g), ng, v});
    }
  }
  if (!closed[1]) return std::nullopt;
  std::vector<Vertex> rev;
  for (std::uint32_t i = 1; i != 0; i = parent[i]) rev.push_back(nodes[i]);
  rev.push_back(s);
  std::reverse(rev.begin(), rev.end());
  return VertexPath(std::move(rev));
}

HomotopyOracleResult homotopy_optimal(const GridMap& map,
                                      const VertexPath& reference,
                                      const HomotopyOracleOptions& options) {
  if (!segments_clear(map, reference)) {
    throw InvalidPathError("reference path is not collision-free: " +
                           format_path(reference));
  }
  if (options.budget == 0) throw std::invalid_argument("budget must be >= 1");
  const Vertex s = reference.front();
  const Vertex g = reference.back();
  check_endpoints(map, s, g);

  // A taut path is locally shortest, and in the universal cover of the free
  // space local geodesics are the unique global ones. So a taut member of
  // the class is its optimum and needs no search.
  VertexPath bound_path = reference;
  {
    VertexPath pulled(tauten_in_class(map, reference.vertices()));
    if (homotopic(map, reference, pulled)) {
      if (options.accept_taut_certificate && is_taut(map, pulled)) {
        HomotopyOracleResult done;
        done.status = OracleStatus::Found;
        done.certified = true;
        done.path = std::move(pulled);
        return done;
      }
      if (pulled.length() < bound_path.length()) bound_path = std::move(pulled);
    }
  }
  const double bound = bound_path.length() + 1e-7;

  const GridMap masked = options.mask_far_cells
                             ? mask_far_cells(map, s, g, bound)
                             : map;
  const RaySystem rays(masked);
  WordTrie trie;
  const std::uint32_t target =
      trie.append(WordTrie::kEmpty, raw_crossings(rays, bound_path));

  NodeVisibility vis(map, ellipse_nodes(map, s, g, bound));
  const auto& nodes = vis.nodes();
  const std::uint32_t goal_node = s == g ? 0 : 1;

  struct StateInfo {
    double g = kInf;
    std::uint64_t parent = 0;
    bool closed = false;
  };
  auto key = [](std::uint32_t node, std::uint32_t word) {
    return (std::uint64_t{word} << 32) | node;
  };
  std::unordered_map<std::uint64_t, StateInfo> states;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> open;

  HomotopyOracleResult result;
  const std::uint64_t start = key(0, WordTrie::kEmpty);
  states[start] = {0.0, start, false};
  open.push({distance(s, g), 0.0, start});
  double last_f = -kInf;
  CanonicalSequence crossing;

  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    StateInfo& info = states[top.state];
    if (info.closed || top.g > info.g) continue;
    info.closed = true;
    if (top.f < last_f - kEps) result.monotone = false;
    last_f = std::max(last_f, top.f);
    if (++result.expansions > options.budget) {
      result.status = OracleStatus::BudgetExceeded;
      return result;
    }

    const auto u = static_cast<std::uint32_t>(top.state & 0xffffffffu);
    const auto word = static_cast<std::uint32_t>(top.state >> 32);
    if (u == goal_node && word == target) {
      std::vector<Vertex> rev;
      for (std::uint64_t st = top.state;; st = states[st].parent) {
        rev.push_back(nodes[st & 0xffffffffu]);
        if (st == start) break;
      }
      std::reverse(rev.begin(), rev.end());
      result.status = OracleStatus::Found;
      result.path = VertexPath(std::move(rev));
      return result;
    }

    const Vertex uv = nodes[u];
    const bool at_start = top.state == start;
    const Vertex pv = nodes[states[top.state].parent & 0xffffffffu];
    for (const std::uint32_t v : vis.visible_from(u)) {
      const Vertex vv = nodes[v];
      const double ng = top.g + distance(uv, vv);
      if (ng + distance(vv, g) > bound + kEps) continue;
      // Shortest paths within a class are taut, and the route kept for each
      // state is its unique shortest one, so only taut continuations matter.
      if (!at_start && !taut_at(map, pv, uv, vv)) continue;
      if (v != goal_node &&
          (map.corner_class(vv) != CornerClass::ConvexCorner ||
           !tangent_at(map, vv, {vv.x - uv.x, vv.y - uv.y}))) {
        continue;
      }
      crossing.clear();
      rays.append_crossings(uv, vv, crossing);
      const std::uint64_t next = key(v, trie.append(word, crossing));
      StateInfo& ni = states[next];
      if (ni.closed || ng >= ni.g) continue;
      ni.g = ng;
      ni.parent = top.state;
      open.push({ng + distance(vv, g), ng, next});
    }
  }
  // Unreachable for a valid reference: the bound path's own class member is
  // within the ellipse. Reported as exhaustion rather than asserted.
  result.status = OracleStatus::BudgetExceeded;
  return result;
}

namespace {

// Dijkstra on the graph with some nodes and directed edges removed.
std::optional<std::pair<std::vector<std::uint32_t>, double>> restricted_dijkstra(
    const VisibilityGraph& graph, std::uint32_t s, std::uint32_t g,
    const std::vector<std::uint8_t>& node_removed,
    const std::set<std::pair<std::uint32_t, std::uint32_t>>& edge_removed) {
  const std::size_t n = graph.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::uint32_t> parent(n, 0);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == g) break;
    for (const VisEdge& e : graph.neighbors(u)) {
      if (node_removed[e.to] || edge_removed.count({u, e.to})) continue;
      const double nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        parent[e.to] = u;
        pq.push({nd, e.to});
      }
    }
  }
  if (dist[g] == kInf) return std::nullopt;
  std::vector<std::uint32_t> path;
  for (std::uint32_t i = g; i != s; i = parent[i]) path.push_back(i);
  path.push_back(s);
  std::reverse(path.begin(), path.end());
  return std::pair{std::move(path), dist[g]};
}

double index_path_length(const VisibilityGraph& graph,
                         const std::vector<std::uint32_t>& p) {
  double total = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    total += distance(graph.nodes()[p[i - 1]], graph.nodes()[p[i]]);
  }
  return total;
}

// Yen's algorithm; `visit` returns true to stop early.
void yen(const VisibilityGraph& graph, Vertex s, Vertex g, std::size_t k,
         const std::function<bool(const VertexPath&)>& visit) {
  const auto si = graph.index_of(s);
  const auto gi = graph.index_of(g);
  if (!si || !gi) throw std::invalid_argument("endpoint is not a graph node");
  auto to_path = [&](const std::vector<std::uint32_t>& p) {
    std::vector<Vertex> v;
    v.reserve(p.size());
    for (const auto i : p) v.push_back(graph.nodes()[i]);
    return VertexPath(std::move(v));
  };
  if (*si == *gi) {
    if (k > 0) visit(VertexPath({s}));
    return;
  }

  const std::size_t n = graph.node_count();
  std::vector<std::uint8_t> no_nodes(n, 0);
  auto first = restricted_dijkstra(graph, static_cast<std::uint32_t>(*si),
                                   static_cast<std::uint32_t>(*gi), no_nodes, {});
  if (!first) return;
  std::vector<std::vector<std::uint32_t>> accepted{first->first};
  // Candidates ordered by (length, node sequence) for determinism.
  std::set<std::pair<double, std::vector<std::uint32_t>>> candidates;
  if (visit(to_path(accepted.back())) || k == 1) return;

  while (accepted.size() < k) {
    const auto& last = accepted.back();
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
      const std::vector<std::uint32_t> root(last.begin(),
                                            last.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      std::set<std::pair<std::uint32_t, std::uint32_t>> removed_edges;
      for (const auto& p : accepted) {
        if (p.size() > i + 1 && std::equal(root.begin(), root.end(), p.begin())) {
          removed_edges.insert({p[i], p[i + 1]});
        }
      }
      std::vector<std::uint8_t> removed_nodes(n, 0);
      for (std::size_t j = 0; j < i; ++j) removed_nodes[root[j]] = 1;
      const auto spur = restricted_dijkstra(graph, root.back(),
                                            static_cast<std::uint32_t>(*gi),
                                            removed_nodes, removed_edges);
      if (!spur) continue;
      std::vector<std::uint32_t> total(root.begin(), root.end() - 1);
      total.insert(total.end(), spur->first.begin(), spur->first.end());
      candidates.insert({index_path_length(graph, total), std::move(total)});
    }
    // Drop candidates already accepted (possible via different spur roots).
    while (!candidates.empty() &&
           std::find(accepted.begin(), accepted.end(),
                     candidates.begin()->second) != accepted.end()) {
      candidates.erase(candidates.begin());
    }
    if (candidates.empty()) return;
    accepted.push_back(candidates.begin()->second);
    candidates.erase(candidates.begin());
    if (visit(to_path(accepted.back()))) return;
  }
}

}  // namespace

std::vector<VertexPath> k_shortest_simple_paths(const VisibilityGraph& graph,
                                                Vertex s, Vertex g,
                                                std::size_t k) {
  std::vector<VertexPath> out;
  yen(graph, s, g, k, [&](const VertexPath& p) {
    out.push_back(p);
    return false;
  });
  return out;
}

std::optional<VertexPath> homotopy_optimal_by_enumeration(
    const GridMap& map, const VertexPath& reference, std::size_t max_paths) {
  const RaySystem rays(map);
  const CanonicalSequence target = canonical_sequence(map, rays, reference);
  const VisibilityGraph graph =
      full_visibility_graph(map, reference.front(), reference.back());
  std::optional<VertexPath> found;
  yen(graph, reference.front(), reference.back(), max_paths,
      [&](const VertexPath& p) {
        if (canonical_sequence(map, rays, p) != target) return false;
        found = p;
        return true;
      });
  return found;
}

std::optional<bool> lemma1_check(const VertexPath& optimal) {
  if (optimal.size() != 3) return std::nullopt;
  const Vertex s = optimal[0];
  const Vertex v = optimal[1];
  const Vertex g = optimal[2];
  auto between = [](int a, int x, int b) {
    return std::min(a, b) <= x && x <= std::max(a, b);
  };
  return between(s.x, v.x, g.x) && between(s.y, v.y, g.y);
}

bool lemma3_check(const GridMap& map, const VertexPath& grid_path,
                  const VertexPath& optimal) {
  const std::unordered_set<Vertex> on_path(grid_path.vertices().begin(),
                                           grid_path.vertices().end());
  auto witness = [&](Vertex v, Direction dir) {
    for (Vertex q = v;; q = step(q, dir)) {
      if (on_path.count(q)) return true;
      if (!scan_step_clear(map, q, dir)) return false;
    }
  };
  for (std::size_t i = 1; i + 1 < optimal.size(); ++i) {
    const Vertex v = optimal[i];
    const bool horizontal = witness(v, Direction::Left) || witness(v, Direction::Right);
    const bool vertical = witness(v, Direction::Up) || witness(v, Direction::Down);
    if (!horizontal || !vertical) return false;
  }
  return true;
}

}  // namespace hvg
