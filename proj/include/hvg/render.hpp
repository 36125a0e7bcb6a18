#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hvg/grid.hpp"
#include "hvg/path.hpp"

namespace hvg {

struct RenderOptions {
  /// Pixels per lattice unit.
  int scale = 8;
};

/// Obstacle cells filled, a light lattice when the scale allows it, one
/// polyline per path in its own colour with a marker on every vertex.
std::string render_svg(const GridMap& map, const std::vector<VertexPath>& paths,
                       const RenderOptions& options = {});

inline constexpr int kMaxAsciiWidth = 80;

/// Text view on the interleaved vertex/cell raster: vertex rows show '+' or
/// the index (1-9, then a-z) of the last path having a vertex there, cell rows
/// show '@' for obstacles. Throws std::length_error for maps wider than
/// kMaxAsciiWidth.
std::string render_ascii(const GridMap& map,
                         const std::vector<VertexPath>& paths);

/// Vertex list as written by `hvgplan plan --out csv`: header `x,y`, then
/// one vertex per line. Throws std::runtime_error on malformed input.
VertexPath parse_path_csv(const std::string& text);
std::string path_to_csv(const VertexPath& path);

}  // namespace hvg
