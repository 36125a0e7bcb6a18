#include "hvg/hvg.hpp"

#include <algorithm>

#include "hvg/parallel.hpp"

namespace hvg {

std::optional<Vertex> cardinal_scan(const GridMap& map, Vertex v,
                                    Direction dir) {
  Vertex curr = v;
  while (scan_step_clear(map, curr, dir)) {
    curr = step(curr, dir);
    switch (map.corner_class(curr)) {
      case CornerClass::ConvexCorner:
        return curr;
      case CornerClass::Blocked:
        return std::nullopt;
      default:
        break;
    }
  }
  return std::nullopt;
}

ScanHits scan_vertex(const GridMap& map, Vertex v) {
  ScanHits out{v, {}};
  for (const Direction d : kCardinalDirections) {
    out.hits[static_cast<std::size_t>(d)] = cardinal_scan(map, v, d);
  }
  return out;
}

namespace {

void sort_unique(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ScanAccumulator accumulate_scans(const GridMap& map, const VertexPath& path,
                                 unsigned workers) {
  std::vector<Vertex> sources = path.vertices();
  sort_unique(sources);

  std::vector<ScanHits> traces(sources.size());
  parallel_for(
      sources.size(), workers,
      [&](std::size_t i) { traces[i] = scan_vertex(map, sources[i]); }, 16);

  ScanAccumulator acc;
  acc.seed_vertices = {path.front(), path.back()};
  for (const auto& t : traces) {
    if (map.corner_class(t.origin) == CornerClass::ConvexCorner) {
      acc.seed_vertices.push_back(t.origin);
    }
    for (const Direction d : kCardinalDirections) {
      if (const auto& hit = t[d]) {
        (is_horizontal(d) ? acc.horizontal_hits : acc.vertical_hits)
            .push_back(*hit);
      }
    }
  }
  sort_unique(acc.horizontal_hits);
  sort_unique(acc.vertical_hits);
  sort_unique(acc.seed_vertices);
  return acc;
}

std::vector<Vertex> collect_hvg_vertices(const GridMap& map,
                                         const VertexPath& path,
                                         unsigned workers) {
  const ScanAccumulator acc = accumulate_scans(map, path, workers);
  std::vector<Vertex> both;
  std::set_intersection(acc.horizontal_hits.begin(), acc.horizontal_hits.end(),
                        acc.vertical_hits.begin(), acc.vertical_hits.end(),
                        std::back_inserter(both));
  std::vector<Vertex> out;
  std::set_union(acc.seed_vertices.begin(), acc.seed_vertices.end(),
                 both.begin(), both.end(), std::back_inserter(out));
  return out;
}

namespace {

// A graph path may run straight through a node; such vertices add nothing to
// the polyline.
VertexPath drop_collinear(const VertexPath& path) {
  const auto& v = path.vertices();
  std::vector<Vertex> out;
  out.reserve(v.size());
  for (const Vertex w : v) {
    if (out.size() >= 2) {
      const Vertex a = out[out.size() - 2];
      const Vertex b = out.back();
      const long long cr = 1LL * (b.x - a.x) * (w.y - b.y) -
                           1LL * (b.y - a.y) * (w.x - b.x);
      const long long dot = 1LL * (b.x - a.x) * (w.x - b.x) +
                            1LL * (b.y - a.y) * (w.y - b.y);
      if (cr == 0 && dot > 0) out.pop_back();
    }
    out.push_back(w);
  }
  return VertexPath(std::move(out));
}

}  // namespace

PostprocessResult hvg_postprocess(const GridMap& map, const VertexPath& path,
                                  unsigned workers) {
  const std::vector<Vertex> nodes = collect_hvg_vertices(map, path, workers);
  const VisibilityGraph graph = build_visibility_graph(map, nodes, workers);
  auto best = vg_search(graph, path.front(), path.back());
  if (!best) {
    return {path, true, graph.node_count(), graph.edge_count()};
  }
  return {drop_collinear(*best), false, graph.node_count(), graph.edge_count()};
}

}  // namespace hvg
