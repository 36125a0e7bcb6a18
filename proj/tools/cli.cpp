#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hvg/baselines.hpp"
#include "hvg/bench.hpp"
#include "hvg/hvg.hpp"
#include "hvg/parallel.hpp"
#include "hvg/render.hpp"
#include "hvg/search.hpp"

namespace hvg::cli {

namespace {

// Thrown for bad arguments discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vertex parse_vertex(const std::string& text) {
  std::istringstream ss(text);
  Vertex v;
  char comma = 0;
  if (!(ss >> v.x >> comma >> v.y) || comma != ',' || !(ss >> std::ws).eof()) {
    throw UsageError("expected X,Y but got '" + text + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write " + path);
}

GridMap load(const std::string& path) {
  try {
    return load_map(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ------------------------------------------------------------------- plan

struct PlanArgs {
  std::string map;
  std::string start;
  std::string goal;
  std::string algo = "astar";
  double weight = 3.0;
  std::string post = "hvg";
  std::vector<std::string> out;
  unsigned workers = 1;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const GridMap map = load(a.map);
  const Vertex s = parse_vertex(a.start);
  const Vertex g = parse_vertex(a.goal);
  if (!a.out.empty() && a.out.size() != 2) {
    throw UsageError("--out takes FORMAT PATH");
  }

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  SearchResult found;
  try {
    if (a.algo == "thetastar") {
      found = theta_star(map, s, g);
    } else {
      SearchConfig cfg;
      cfg.heuristic_weight = a.algo == "wastar" ? a.weight : 1.0;
      found = grid_search(map, s, g, cfg);
    }
  } catch (const InvalidEndpoint& e) {
    throw UsageError(e.what());
  }
  const auto t1 = clock::now();
  if (!found.path) {
    err << "no path\n";
    return kNoPath;
  }
  VertexPath path = *found.path;
  bool fallback = false;
  if (a.post == "gpp") {
    path = greedy_postprocess(map, path);
  } else if (a.post == "sp") {
    path = string_pull(map, path);
  } else if (a.post == "hvg") {
    auto r = hvg_postprocess(map, path, a.workers);
    fallback = r.fallback_used;
    path = std::move(r.path);
  }
  const auto t2 = clock::now();
  const double search_us =
      std::chrono::duration<double, std::micro>(t1 - t0).count();
  const double post_us =
      a.post == "none" ? 0.0
                       : std::chrono::duration<double, std::micro>(t2 - t1).count();

  std::string algorithm = a.algo;
  if (a.algo == "wastar") {
    std::ostringstream w;
    w << "wastar(" << a.weight << ")";
    algorithm = w.str();
  }
  if (a.post != "none") algorithm += "+" + a.post;

  out << "algorithm: " << algorithm << '\n';
  out << "path: " << format_path(path) << '\n';
  out << "vertices: " << path.size() << '\n';
  out << "length: " << std::fixed << std::setprecision(6) << path.length()
      << '\n';
  out << "search_us: " << std::setprecision(1) << search_us << '\n';
  out << "post_us: " << post_us << '\n';
  out << std::defaultfloat;
  if (fallback) out << "fallback: input path returned\n";

  if (!a.out.empty()) {
    const std::string& format = a.out[0];
    const std::string& file = a.out[1];
    if (format == "csv") {
      write_file(file, path_to_csv(path));
    } else if (format == "json") {
      nlohmann::ordered_json j;
      j["start"] = {s.x, s.y};
      j["goal"] = {g.x, g.y};
      j["algorithm"] = algorithm;
      auto verts = nlohmann::ordered_json::array();
      for (const Vertex v : path.vertices()) verts.push_back({v.x, v.y});
      j["vertices"] = std::move(verts);
      j["length"] = path.length();
      j["times"] = {{"search_us", search_us}, {"post_us", post_us}};
      write_file(file, j.dump(2) + "\n");
    } else if (format == "svg") {
      std::vector<VertexPath> paths;
      if (a.post != "none") paths.push_back(*found.path);
      paths.push_back(path);
      write_file(file, render_svg(map, paths));
    } else {
      throw UsageError("unknown output format '" + format + "'");
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ bench

int cmd_bench(const std::string& config_path, const std::string& out_path,
              std::optional<unsigned> workers, std::ostream& out) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open " + config_path);
  BenchConfig config;
  LoadedSuite suite;
  try {
    config = parse_bench_config(in);
    if (workers) config.suite.workers = *workers;
    suite = load_suite(
        config, std::filesystem::path(config_path).parent_path().string());
  } catch (const std::runtime_error& e) {
    throw UsageError(config_path + ": " + e.what());
  }
  const auto records =
      run_suite(suite.maps, suite.scenarios, config.algorithms, config.suite);
  std::ofstream csv(out_path);
  if (!csv) throw UsageError("cannot write " + out_path);
  write_csv(records, csv);
  csv.close();
  if (!csv) throw UsageError("cannot write " + out_path);
  out << suite.scenarios.size() << " scenarios on " << suite.maps.size()
      << " map(s), " << config.suite.workers << " worker(s)\n";
  write_summary(summarize(records), out);
  return kOk;
}

// ----------------------------------------------------------------- genmap

int cmd_genmap(const std::string& size, double density, std::uint64_t seed,
               const std::string& out_path) {
  int w = 0;
  int h = 0;
  char x = 0;
  std::istringstream ss(size);
  if (!(ss >> w >> x >> h) || (x != 'x' && x != 'X') ||
      !(ss >> std::ws).eof() || w < 1 || h < 1) {
    throw UsageError("--size expects WxH with positive W and H");
  }
  if (!(density >= 0.0 && density <= 1.0)) {
    throw UsageError("--density must lie in [0, 1]");
  }
  write_file(out_path, serialize_map(generate_random_map(w, h, density, seed)));
  return kOk;
}

// ----------------------------------------------------------------- render

int cmd_render(const std::string& map_path,
               const std::vector<std::string>& path_files,
               const std::string& out_path, int scale, std::ostream& out,
               std::ostream& err) {
  const GridMap map = load(map_path);
  std::vector<VertexPath> paths;
  for (const auto& file : path_files) {
    try {
      paths.push_back(parse_path_csv(read_file(file)));
    } catch (const std::runtime_error& e) {
      throw UsageError(file + ": " + e.what());
    }
  }
  if (!out_path.empty()) {
    if (scale < 1) throw UsageError("--scale must be positive");
    RenderOptions options;
    options.scale = scale;
    write_file(out_path, render_svg(map, paths, options));
    return kOk;
  }
  try {
    out << render_ascii(map, paths);
  } catch (const std::length_error& e) {
    err << e.what() << " (pass --out FILE.svg)\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Grid path planning with homotopic visibility graph "
               "post-processing"};
  app.require_subcommand(1);

  PlanArgs plan;
  plan.workers = default_worker_count();
  auto* plan_cmd = app.add_subcommand("plan", "Plan one query");
  plan_cmd->add_option("--map", plan.map, "Map file")->required();
  plan_cmd->add_option("--start", plan.start, "Start vertex X,Y")->required();
  plan_cmd->add_option("--goal", plan.goal, "Goal vertex X,Y")->required();
  plan_cmd->add_option("--algo", plan.algo, "Grid search")
      ->check(CLI::IsMember({"astar", "wastar", "thetastar"}))
      ->capture_default_str();
  plan_cmd->add_option("--weight", plan.weight, "Heuristic weight for wastar")
      ->check(CLI::Range(1.0, 1e6))
      ->capture_default_str();
  plan_cmd->add_option("--post", plan.post, "Post-processor")
      ->check(CLI::IsMember({"none", "gpp", "sp", "hvg"}))
      ->capture_default_str();
  plan_cmd->add_option("--out", plan.out, "Also write FORMAT (csv|json|svg) to PATH")
      ->expected(2)
      ->type_name("FORMAT PATH");
  plan_cmd->add_option("--workers", plan.workers, "Threads for HVG scans")
      ->check(CLI::Range(1u, 1024u));

  std::string config_path;
  std::string bench_out;
  std::optional<unsigned> bench_workers;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  bench_cmd->add_option("--config", config_path, "Config file")->required();
  bench_cmd->add_option("--out", bench_out, "CSV output")->required();
  bench_cmd->add_option("--workers", bench_workers, "Job threads")
      ->check(CLI::Range(1u, 1024u));

  std::string size;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("genmap", "Generate a random map");
  gen_cmd->add_option("--size", size, "WxH in cells")->required();
  gen_cmd->add_option("--density", density, "Obstacle probability in [0, 1]")
      ->required();
  gen_cmd->add_option("--seed", seed, "Random seed")->required();
  gen_cmd->add_option("--out", gen_out, "Map file to write")->required();

  std::string render_map;
  std::vector<std::string> render_paths;
  std::string render_out;
  int scale = RenderOptions{}.scale;
  auto* render_cmd = app.add_subcommand("render", "Draw a map and paths");
  render_cmd->add_option("--map", render_map, "Map file")->required();
  render_cmd->add_option("--path", render_paths, "Path CSV (repeatable)")
      ->take_all()
      ->allow_extra_args(false);
  render_cmd->add_option("--out", render_out, "SVG file; ASCII to stdout if absent");
  render_cmd->add_option("--scale", scale, "Pixels per lattice unit")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan, out, err);
    if (*bench_cmd) return cmd_bench(config_path, bench_out, bench_workers, out);
    if (*gen_cmd) return cmd_genmap(size, density, seed, gen_out);
    if (*render_cmd) {
      return cmd_render(render_map, render_paths, render_out, scale, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hvg::cli
