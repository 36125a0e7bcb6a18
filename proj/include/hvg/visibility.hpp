#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"

namespace hvg {

struct VisEdge {
  std::uint32_t to = 0;
  double weight = 0.0;
};

/// Undirected graph over lattice vertices; edge weights are Euclidean lengths.
/// Nodes are kept sorted and unique.
class VisibilityGraph {
 public:
  VisibilityGraph() = default;
  VisibilityGraph(std::vector<Vertex> nodes,
                  std::vector<std::vector<VisEdge>> adjacency);

  const std::vector<Vertex>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const VisEdge> neighbors(std::size_t i) const {
    return adjacency_[i];
  }

  std::optional<std::size_t> index_of(Vertex v) const;
  bool has_edge(Vertex a, Vertex b) const;

 private:
  std::vector<Vertex> nodes_;
  std::vector<std::vector<VisEdge>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Connects every node pair with line of sight. Pair tests are spread over
/// `workers` threads; the result does not depend on the worker count.
VisibilityGraph build_visibility_graph(const GridMap& map,
                                       std::span<const Vertex> nodes,
                                       unsigned workers = 1);

/// Euclidean-shortest s-g path in the graph (A* with straight-line
/// heuristic). Throws std::invalid_argument if s or g is not a node.
std::optional<VertexPath> vg_search(const VisibilityGraph& graph, Vertex s,
                                    Vertex g);

}  // namespace hvg
