#include "hvg/visibility.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hvg/parallel.hpp"

namespace hvg {

VisibilityGraph::VisibilityGraph(std::vector<Vertex> nodes,
                                 std::vector<std::vector<VisEdge>> adjacency)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency)) {
  if (nodes_.size() != adjacency_.size()) {
    throw std::invalid_argument("adjacency size does not match node count");
  }
  std::size_t half_edges = 0;
  for (const auto& a : adjacency_) half_edges += a.size();
  edge_count_ = half_edges / 2;
}

std::optional<std::size_t> VisibilityGraph::index_of(Vertex v) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool VisibilityGraph::has_edge(Vertex a, Vertex b) const {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  if (!ia || !ib) return false;
  for (const auto& e : adjacency_[*ia]) {
    if (e.to == *ib) return true;
  }
  return false;
}

VisibilityGraph build_visibility_graph(const GridMap& map,
                                       std::span<const Vertex> nodes,
                                       unsigned workers) {
  std::vector<Vertex> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const Vertex v : sorted) {
    if (!map.vertex_in_bounds(v)) {
      throw std::invalid_argument("visibility node " + to_string(v) +
                                  " is off the lattice");
    }
  }

  const std::size_t n = sorted.size();
  // Row i holds the visible partners j > i.
  std::vector<std::vector<std::uint32_t>> rows(n);
  parallel_for(
      n, workers,
      [&](std::size_t i) {
        auto& row = rows[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          if (los_segment(map, sorted[i], sorted[j])) {
            row.push_back(static_cast<std::uint32_t>(j));
          }
        }
      },
      4);

  std::vector<std::vector<VisEdge>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::uint32_t j : rows[i]) {
      const double w = distance(sorted[i], sorted[j]);
      adjacency[i].push_back({j, w});
      adjacency[j].push_back({static_cast<std::uint32_t>(i), w});
    }
  }
  return VisibilityGraph(std::move(sorted), std::move(adjacency));
}

std::optional<VertexPath> vg_search(const VisibilityGraph& graph, Vertex s,
                                    Vertex g) {
  const auto si = graph.index_of(s);
  const auto gi = graph.index_of(g);
  if (!si || !gi) {
    throw std::invalid_argument("search endpoints must be graph nodes");
  }
  if (*si == *gi) return VertexPath({s});

  const auto& nodes = graph.nodes();
  const std::size_t n = nodes.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<double> cost(n, kInf);
  std::vector<std::uint32_t> parent(n, kNone);
  std::vector<std::uint8_t> closed(n, 0);

  struct Entry {
    double f;
    double g;
    std::uint32_t node;
  };
  auto order = [&nodes](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return nodes[b.node] < nodes[a.node];
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(order)> open(order);
  cost[*si] = 0.0;
  open.push({distance(s, g), 0.0, static_cast<std::uint32_t>(*si)});

  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    if (closed[top.node] || top.g > cost[top.node]) continue;
    closed[top.node] = 1;
    if (top.node == *gi) break;
    for (const auto& e : graph.neighbors(top.node)) {
      if (closed[e.to]) continue;
      const double ng = top.g + e.weight;
      if (ng < cost[e.to]) {
        cost[e.to] = ng;
        parent[e.to] = top.node;
        open.push({ng + distance(nodes[e.to], g), ng, e.to});
      }
    }
  }
  if (!closed[*gi]) return std::nullopt;

  std::vector<Vertex> rev;
  for (std::uint32_t i = static_cast<std::uint32_t>(*gi); i != kNone;
       i = parent[i]) {
    rev.push_back(nodes[i]);
  }
  std::reverse(rev.begin(), rev.end());
  return VertexPath(std::move(rev));
}

}  // namespace hvg
