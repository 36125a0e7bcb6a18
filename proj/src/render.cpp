#include "hvg/render.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace hvg {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

char path_mark(std::size_t i) {
  if (i < 9) return static_cast<char>('1' + i);
  if (i < 9 + 26) return static_cast<char>('a' + (i - 9));
  return '*';
}

}  // namespace

std::string render_svg(const GridMap& map, const std::vector<VertexPath>& paths,
                       const RenderOptions& options) {
  if (options.scale < 1) throw std::invalid_argument("scale must be positive");
  const int k = options.scale;
  const int w = map.width() * k;
  const int h = map.height() * k;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"#ffffff\" stroke=\"#888888\"/>\n";

  if (k >= 6 && map.width() <= 256 && map.height() <= 256) {
    out << "<g stroke=\"#e4e4e4\" stroke-width=\"1\">\n";
    for (int x = 1; x < map.width(); ++x) {
      out << "<line x1=\"" << x * k << "\" y1=\"0\" x2=\"" << x * k
          << "\" y2=\"" << h << "\"/>\n";
    }
    for (int y = 1; y < map.height(); ++y) {
      out << "<line x1=\"0\" y1=\"" << y * k << "\" x2=\"" << w << "\" y2=\""
          << y * k << "\"/>\n";
    }
    out << "</g>\n";
  }

  // Horizontal runs of obstacle cells keep large maps small.
  out << "<g fill=\"#404040\">\n";
  for (int cy = 0; cy < map.height(); ++cy) {
    for (int cx = 0; cx < map.width();) {
      if (!map.blocked(cx, cy)) {
        ++cx;
        continue;
      }
      int end = cx;
      while (end < map.width() && map.blocked(end, cy)) ++end;
      out << "<rect x=\"" << cx * k << "\" y=\"" << cy * k << "\" width=\""
          << (end - cx) * k << "\" height=\"" << k << "\"/>\n";
      cx = end;
    }
  }
  out << "</g>\n";

  const double stroke = std::max(1.0, k / 4.0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const char* colour = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"" << stroke << "\" points=\"";
    for (std::size_t j = 0; j < paths[i].size(); ++j) {
      if (j) out << ' ';
      out << paths[i][j].x * k << ',' << paths[i][j].y * k;
    }
    out << "\"/>\n";
    out << "<g fill=\"" << colour << "\">\n";
    for (const Vertex v : paths[i].vertices()) {
      out << "<circle cx=\"" << v.x * k << "\" cy=\"" << v.y * k << "\" r=\""
          << stroke * 1.5 << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_ascii(const GridMap& map,
                         const std::vector<VertexPath>& paths) {
  if (map.width() > kMaxAsciiWidth) {
    throw std::length_error("map is " + std::to_string(map.width()) +
                            " wide; ASCII output is limited to " +
                            std::to_string(kMaxAsciiWidth) +
                            " columns, render to SVG instead");
  }
  const int cols = 2 * map.width() + 1;
  const int rows = 2 * map.height() + 1;
  std::vector<std::string> raster(rows, std::string(cols, ' '));
  for (int y = 0; y <= map.height(); ++y) {
    for (int x = 0; x <= map.width(); ++x) raster[2 * y][2 * x] = '+';
  }
  for (int cy = 0; cy < map.height(); ++cy) {
    for (int cx = 0; cx < map.width(); ++cx) {
      raster[2 * cy + 1][2 * cx + 1] = map.blocked(cx, cy) ? '@' : ' ';
    }
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (const Vertex v : paths[i].vertices()) {
      if (map.vertex_in_bounds(v)) raster[2 * v.y][2 * v.x] = path_mark(i);
    }
  }
  std::string out;
  for (auto& row : raster) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row;
    out += '\n';
  }
  return out;
}

VertexPath parse_path_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<Vertex> vertices;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "x,y") continue;
    std::istringstream ss(line);
    Vertex v;
    char comma = 0;
    if (!(ss >> v.x >> comma >> v.y) || comma != ',' || !(ss >> std::ws).eof()) {
      throw std::runtime_error("path CSV line " + std::to_string(lineno) +
                               ": expected x,y");
    }
    vertices.push_back(v);
  }
  if (vertices.empty()) throw std::runtime_error("path CSV holds no vertices");
  return VertexPath(std::move(vertices));
}

std::string path_to_csv(const VertexPath& path) {
  std::string out = "x,y\n";
  for (const Vertex v : path.vertices()) {
    out += std::to_string(v.x) + ',' + std::to_string(v.y) + '\n';
  }
  return out;
}

}  // namespace hvg
