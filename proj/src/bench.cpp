#include "hvg/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "hvg/baselines.hpp"
#include "hvg/hvg.hpp"
#include "hvg/parallel.hpp"
#include "hvg/search.hpp"

namespace hvg {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Uniform index in [0, n). Modulo bias is negligible for lattice sizes and
// keeps the stream identical across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

LineError::LineError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

// ---------------------------------------------------------------- scenarios

std::vector<Scenario> parse_scen(std::istream& in) {
  std::vector<Scenario> out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!header) {
      const auto words = split_whitespace(line);
      double version = 0;
      if (words.size() != 2 || words[0] != "version" ||
          !parse_number(words[1], version) || version != 1.0) {
        throw LineError(lineno, "expected header 'version 1'");
      }
      header = true;
      continue;
    }
    const auto f = split_whitespace(line);
    if (f.size() != 9) {
      throw LineError(lineno, "expected 9 fields, got " +
                                  std::to_string(f.size()));
    }
    Scenario sc;
    sc.map_name = f[1];
    double optimal = 0;
    if (!parse_number(f[0], sc.bucket) || !parse_number(f[2], sc.map_width) ||
        !parse_number(f[3], sc.map_height) || !parse_number(f[4], sc.s.x) ||
        !parse_number(f[5], sc.s.y) || !parse_number(f[6], sc.g.x) ||
        !parse_number(f[7], sc.g.y) || !parse_number(f[8], optimal)) {
      throw LineError(lineno, "malformed numeric field");
    }
    if (sc.map_width < 1 || sc.map_height < 1) {
      throw LineError(lineno, "map dimensions must be positive");
    }
    auto on_lattice = [&](Vertex v) {
      return v.x >= 0 && v.y >= 0 && v.x <= sc.map_width &&
             v.y <= sc.map_height;
    };
    if (!on_lattice(sc.s) || !on_lattice(sc.g)) {
      throw LineError(lineno, "endpoint outside the map lattice");
    }
    if (optimal < 0 || !std::isfinite(optimal)) {
      throw LineError(lineno, "bad optimal length");
    }
    if (optimal > 0 || sc.s == sc.g) sc.reference_length = optimal;
    out.push_back(std::move(sc));
  }
  if (!header) throw LineError(lineno + 1, "missing 'version 1' header");
  return out;
}

std::vector<Scenario> parse_scen(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scen(in);
}

std::string RandomSuite::name() const {
  return "random" + std::to_string(size) + "-" +
         std::to_string(density_percent) + "-" + std::to_string(seed);
}

GridMap RandomSuite::generate() const {
  return generate_random_map(size, size, density_percent / 100.0, seed);
}

std::optional<RandomSuite> parse_random_suite(std::string_view name) {
  constexpr std::string_view prefix = "random";
  if (!name.starts_with(prefix)) return std::nullopt;
  const auto parts = split(name.substr(prefix.size()), '-');
  if (parts.size() != 3) return std::nullopt;
  RandomSuite suite;
  if (!parse_number(parts[0], suite.size) ||
      !parse_number(parts[1], suite.density_percent) ||
      !parse_number(parts[2], suite.seed)) {
    return std::nullopt;
  }
  if (suite.size < 1 || suite.size > 1 << 14 || suite.density_percent < 0 ||
      suite.density_percent > 100) {
    return std::nullopt;
  }
  return suite;
}

std::vector<Scenario> sample_scenarios(const GridMap& map,
                                       const std::string& map_name,
                                       const SamplingOptions& options) {
  // Label vertex components under legal moves.
  const std::size_t n = map.vertex_count();
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(n, kNone);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kNone) continue;
    if (map.corner_class(map.vertex_at(i)) == CornerClass::Blocked) continue;
    const auto id = static_cast<std::uint32_t>(sizes.size());
    label[i] = id;
    queue.assign(1, i);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = map.vertex_at(queue[head]);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Vertex w{u.x + dx, u.y + dy};
          if ((dx == 0 && dy == 0) || !legal_move(map, u, w)) continue;
          const std::size_t wi = map.vertex_index(w);
          if (label[wi] != kNone) continue;
          label[wi] = id;
          queue.push_back(wi);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  std::vector<Scenario> out;
  if (sizes.empty()) return out;
  const auto biggest = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Vertex> pool;
  pool.reserve(sizes[biggest]);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == biggest) pool.push_back(map.vertex_at(i));
  }
  if (pool.size() < 2) return out;

  std::mt19937_64 rng(options.seed);
  const std::size_t max_tries = 1000 * (options.count + 1);
  for (std::size_t t = 0; t < max_tries && out.size() < options.count; ++t) {
    const Vertex s = pool[draw(rng, pool.size())];
    const Vertex g = pool[draw(rng, pool.size())];
    if (s == g || octile_heuristic(s, g) < options.min_distance) continue;
    Scenario sc;
    sc.map_name = map_name;
    sc.map_width = map.width();
    sc.map_height = map.height();
    sc.s = s;
    sc.g = g;
    out.push_back(std::move(sc));
  }
  return out;
}

// --------------------------------------------------------------- algorithms

std::string Algorithm::name() const {
  std::string out;
  switch (search) {
    case SearchKind::AStar:
      out = "astar";
      break;
    case SearchKind::WeightedAStar: {
      std::ostringstream ss;
      ss << "wastar(" << weight << ")";
      out = ss.str();
      break;
    }
    case SearchKind::ThetaStar:
      out = "thetastar";
      break;
  }
  switch (post) {
    case PostKind::None:
      break;
    case PostKind::Greedy:
      out += "+gpp";
      break;
    case PostKind::StringPull:
      out += "+sp";
      break;
    case PostKind::Hvg:
      out += "+hvg";
      break;
  }
  return out;
}

Algorithm parse_algorithm(std::string_view name) {
  name = trim(name);
  Algorithm a;
  std::string_view search = name;
  std::string_view post;
  if (const auto plus = name.find('+'); plus != std::string_view::npos) {
    search = name.substr(0, plus);
    post = name.substr(plus + 1);
  }
  if (search == "astar") {
    a.search = SearchKind::AStar;
  } else if (search == "thetastar") {
    a.search = SearchKind::ThetaStar;
  } else if (search == "wastar") {
    a.search = SearchKind::WeightedAStar;
    a.weight = 3.0;
  } else if (search.starts_with("wastar(") && search.ends_with(")")) {
    a.search = SearchKind::WeightedAStar;
    const auto inner = search.substr(7, search.size() - 8);
    if (!parse_number(inner, a.weight) || !(a.weight >= 1.0) ||
        !std::isfinite(a.weight)) {
      throw std::invalid_argument("bad weight in '" + std::string(name) + "'");
    }
  } else {
    throw std::invalid_argument("unknown search '" + std::string(search) + "'");
  }
  if (name.find('+') != std::string_view::npos) {
    if (post == "gpp") {
      a.post = PostKind::Greedy;
    } else if (post == "sp") {
      a.post = PostKind::StringPull;
    } else if (post == "hvg") {
      a.post = PostKind::Hvg;
    } else {
      throw std::invalid_argument("unknown post-processor '" +
                                  std::string(post) + "'");
    }
  }
  return a;
}

// -------------------------------------------------------------------- runs

namespace {

struct Run {
  std::optional<double> length;
  double search_us = 0.0;
  double post_us = 0.0;
  bool fallback = false;
  std::size_t expansions = 0;
};

double micros(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}

Run run_once(const GridMap& map, const Scenario& sc, const Algorithm& algo,
             unsigned post_workers) {
  using clock = std::chrono::steady_clock;
  Run run;
  const auto t0 = clock::now();
  SearchResult found;
  try {
    if (algo.search == SearchKind::ThetaStar) {
      found = theta_star(map, sc.s, sc.g);
    } else {
      SearchConfig cfg;
      cfg.heuristic_weight =
          algo.search == SearchKind::WeightedAStar ? algo.weight : 1.0;
      found = grid_search(map, sc.s, sc.g, cfg);
    }
  } catch (const InvalidEndpoint&) {
    // Blocked endpoints from a corpus count as unreachable.
  }
  const auto t1 = clock::now();
  run.search_us = micros(t1 - t0);
  run.expansions = found.expansions;
  if (!found.path) return run;

  std::optional<VertexPath> result;
  const auto t2 = clock::now();
  switch (algo.post) {
    case PostKind::None:
      result = *found.path;
      break;
    case PostKind::Greedy:
      result = greedy_postprocess(map, *found.path);
      break;
    case PostKind::StringPull:
      result = string_pull(map, *found.path);
      break;
    case PostKind::Hvg: {
      auto r = hvg_postprocess(map, *found.path, post_workers);
      run.fallback = r.fallback_used;
      result = std::move(r.path);
      break;
    }
  }
  const auto t3 = clock::now();
  if (algo.post != PostKind::None) run.post_us = micros(t3 - t2);
  run.length = result->length();
  return run;
}

}  // namespace

std::vector<BenchRecord> run_suite(const MapCorpus& maps,
                                   const std::vector<Scenario>& scenarios,
                                   const std::vector<Algorithm>& algorithms,
                                   const SuiteOptions& options) {
  if (options.repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  std::vector<const GridMap*> map_of(scenarios.size());
  std::vector<std::size_t> index_of(scenarios.size());
  std::map<std::string, std::size_t, std::less<>> per_map;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto it = maps.find(scenarios[i].map_name);
    if (it == maps.end()) {
      throw std::invalid_argument("missing map '" + scenarios[i].map_name +
                                  "'");
    }
    map_of[i] = &it->second;
    index_of[i] = per_map[scenarios[i].map_name]++;
  }

  const std::size_t jobs = scenarios.size() * algorithms.size();
  std::vector<BenchRecord> records(jobs);
  parallel_for(jobs, options.workers, [&](std::size_t j) {
    const std::size_t si = j / algorithms.size();
    const Scenario& sc = scenarios[si];
    const Algorithm& algo = algorithms[j % algorithms.size()];
    const GridMap& map = *map_of[si];
    if (options.warmup) run_once(map, sc, algo, options.post_workers);
    std::vector<Run> runs;
    runs.reserve(options.repetitions);
    for (std::size_t r = 0; r < options.repetitions; ++r) {
      runs.push_back(run_once(map, sc, algo, options.post_workers));
    }
    // Lower median by total time; its parts are reported together.
    std::vector<std::size_t> order(runs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ta = runs[a].search_us + runs[a].post_us;
      const double tb = runs[b].search_us + runs[b].post_us;
      return std::tie(ta, a) < std::tie(tb, b);
    });
    const Run& mid = runs[order[(order.size() - 1) / 2]];

    BenchRecord& rec = records[j];
    rec.map_name = sc.map_name;
    rec.scenario = index_of[si];
    rec.algorithm = algo.name();
    rec.path_length = mid.length;
    rec.search_us = mid.search_us;
    rec.post_us = mid.post_us;
    rec.total_us = mid.search_us + mid.post_us;
    rec.fallback = mid.fallback;
    rec.workers = options.workers;
    rec.expansions = mid.expansions;
  });
  return records;
}

// --------------------------------------------------------------------- csv

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  std::vector<const BenchRecord*> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRecord* a, const BenchRecord* b) {
                     return std::tie(a->map_name, a->scenario, a->algorithm) <
                            std::tie(b->map_name, b->scenario, b->algorithm);
                   });
  out << kCsvHeader << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const BenchRecord* r : rows) {
    out << r->map_name << ',' << r->scenario << ',' << r->algorithm << ',';
    if (r->path_length) out << *r->path_length;
    out << ',' << r->search_us << ',' << r->post_us << ',' << r->total_us
        << ',' << (r->fallback ? 1 : 0) << ',' << r->workers << '\n';
  }
  out.flags(flags);
  out.precision(precision);
  if (!out) throw std::runtime_error("failed writing CSV");
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw LineError(1, "expected CSV header");
  }
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 9) throw LineError(lineno, "expected 9 columns");
    BenchRecord r;
    r.map_name = std::string(f[0]);
    r.algorithm = std::string(f[2]);
    int fallback = 0;
    if (!parse_number(f[1], r.scenario) || !parse_number(f[4], r.search_us) ||
        !parse_number(f[5], r.post_us) || !parse_number(f[6], r.total_us) ||
        !parse_number(f[7], fallback) || !parse_number(f[8], r.workers) ||
        (fallback != 0 && fallback != 1)) {
      throw LineError(lineno, "malformed field");
    }
    r.fallback = fallback == 1;
    if (!trim(f[3]).empty()) {
      double len = 0;
      if (!parse_number(f[3], len)) throw LineError(lineno, "bad path_length");
      r.path_length = len;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ----------------------------------------------------------------- summary

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::tuple<std::string, std::size_t>, double> astar;
  for (const auto& r : records) {
    if (r.algorithm == "astar" && r.path_length) {
      astar[{r.map_name, r.scenario}] = *r.path_length;
    }
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchRecord*>> by_algo;
  for (const auto& r : records) {
    auto& bucket = by_algo[r.algorithm];
    if (bucket.empty()) order.push_back(r.algorithm);
    bucket.push_back(&r);
  }
  std::vector<SummaryRow> rows;
  for (const auto& name : order) {
    SummaryRow row;
    row.algorithm = name;
    std::vector<double> search, post, total;
    double ratio_sum = 0.0;
    std::size_t ratio_n = 0;
    for (const BenchRecord* r : by_algo[name]) {
      ++row.runs;
      if (!r->path_length) {
        ++row.no_path;
        continue;
      }
      search.push_back(r->search_us);
      post.push_back(r->post_us);
      total.push_back(r->total_us);
      const auto it = astar.find({r->map_name, r->scenario});
      if (it != astar.end() && it->second > 0) {
        ratio_sum += *r->path_length / it->second;
        ++ratio_n;
      }
    }
    if (ratio_n) row.mean_length_ratio = ratio_sum / ratio_n;
    row.median_search_us = median_of(search);
    row.median_post_us = median_of(post);
    row.median_total_us = median_of(total);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::left << std::setw(18) << "algorithm" << std::right
      << std::setw(7) << "runs" << std::setw(8) << "nopath" << std::setw(12)
      << "cost % A*" << std::setw(14) << "search ms" << std::setw(12)
      << "post ms" << std::setw(12) << "total ms" << '\n';
  out << std::fixed;
  for (const auto& r : rows) {
    out << std::left << std::setw(18) << r.algorithm << std::right
        << std::setw(7) << r.runs << std::setw(8) << r.no_path
        << std::setw(12);
    if (r.mean_length_ratio) {
      out << std::setprecision(3) << 100.0 * *r.mean_length_ratio;
    } else {
      out << "-";
    }
    out << std::setprecision(3) << std::setw(14) << r.median_search_us / 1e3
        << std::setw(12) << r.median_post_us / 1e3 << std::setw(12)
        << r.median_total_us / 1e3 << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

// ------------------------------------------------------------------ config

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  cfg.suite.workers = default_worker_count();
  std::string line;
  std::size_t lineno = 0;
  auto parse_bool = [](std::string_view v, bool& out) {
    if (v == "true" || v == "1" || v == "yes") {
      out = true;
    } else if (v == "false" || v == "0" || v == "no") {
      out = false;
    } else {
      return false;
    }
    return true;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw LineError(lineno, "expected key = value");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (value.empty()) throw LineError(lineno, "empty value for '" + std::string(key) + "'");
    bool ok = true;
    if (key == "suite") {
      const auto s = parse_random_suite(value);
      ok = s.has_value();
      if (ok) cfg.suites.push_back(*s);
    } else if (key == "map") {
      cfg.map_files.emplace_back(value);
    } else if (key == "scen") {
      cfg.scen_files.emplace_back(value);
    } else if (key == "scenarios") {
      ok = parse_number(value, cfg.sampling.count);
    } else if (key == "sample_seed") {
      ok = parse_number(value, cfg.sampling.seed);
    } else if (key == "min_distance") {
      ok = parse_number(value, cfg.sampling.min_distance) &&
           cfg.sampling.min_distance >= 0;
    } else if (key == "algorithms") {
      try {
        for (const auto name : split(value, ',')) {
          cfg.algorithms.push_back(parse_algorithm(name));
        }
      } catch (const std::invalid_argument& e) {
        throw LineError(lineno, e.what());
      }
    } else if (key == "repetitions") {
      ok = parse_number(value, cfg.suite.repetitions) &&
           cfg.suite.repetitions >= 1;
    } else if (key == "warmup") {
      ok = parse_bool(value, cfg.suite.warmup);
    } else if (key == "workers") {
      ok = parse_number(value, cfg.suite.workers) && cfg.suite.workers >= 1;
    } else if (key == "post_workers") {
      ok = parse_number(value, cfg.suite.post_workers) &&
           cfg.suite.post_workers >= 1;
    } else if (key == "reference") {
      if (value == "none") {
        cfg.reference = ReferenceKind::None;
      } else if (value == "grid") {
        cfg.reference = ReferenceKind::Grid;
      } else if (value == "anyangle") {
        cfg.reference = ReferenceKind::AnyAngle;
      } else {
        ok = false;
      }
    } else {
      throw LineError(lineno, "unknown key '" + std::string(key) + "'");
    }
    if (!ok) {
      throw LineError(lineno, "bad value for '" + std::string(key) + "'");
    }
  }
  if (cfg.algorithms.empty()) {
    throw LineError(lineno + 1, "no algorithms selected");
  }
  if (cfg.suites.empty() && cfg.map_files.empty() && cfg.scen_files.empty()) {
    throw LineError(lineno + 1, "no suite, map or scen entries");
  }
  return cfg;
}

LoadedSuite load_suite(const BenchConfig& config, const std::string& base_dir) {
  namespace fs = std::filesystem;
  const fs::path base = base_dir.empty() ? fs::path(".") : fs::path(base_dir);
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  LoadedSuite out;
  for (const auto& suite : config.suites) {
    const std::string name = suite.name();
    const auto [it, inserted] = out.maps.emplace(name, suite.generate());
    if (!inserted) continue;
    auto sampled = sample_scenarios(it->second, name, config.sampling);
    out.scenarios.insert(out.scenarios.end(), sampled.begin(), sampled.end());
  }
  for (const auto& file : config.map_files) {
    const fs::path path = resolve(file);
    if (!fs::exists(path)) throw std::runtime_error("missing map file " + path.string());
    const std::string name = path.stem().string();
    const auto [it, inserted] = out.maps.emplace(name, load_map(path.string()));
    if (!inserted) continue;
    auto sampled = sample_scenarios(it->second, name, config.sampling);
    out.scenarios.insert(out.scenarios.end(), sampled.begin(), sampled.end());
  }
  for (const auto& file : config.scen_files) {
    const fs::path path = resolve(file);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    for (auto sc : parse_scen(in)) {
      if (!out.maps.contains(sc.map_name)) {
        fs::path map_path = path.parent_path() / sc.map_name;
        if (!fs::exists(map_path)) {
          map_path = path.parent_path() / fs::path(sc.map_name).filename();
        }
        if (!fs::exists(map_path)) {
          throw std::runtime_error("missing map '" + sc.map_name +
                                   "' for " + path.string());
        }
        out.maps.emplace(sc.map_name, load_map(map_path.string()));
      }
      const GridMap& m = out.maps.find(sc.map_name)->second;
      if (m.width() != sc.map_width || m.height() != sc.map_height) {
        throw std::runtime_error("map '" + sc.map_name +
                                 "' size differs from scenario file");
      }
      out.scenarios.push_back(std::move(sc));
    }
  }
  return out;
}

}  // namespace hvg
