#pragma once
// Benchmark harness: scenario files, generated random suites, timed runs of
// planner/post-processor combinations, CSV records and a summary table.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hvg/grid.hpp"

namespace hvg {

/// One start/goal query. Coordinates are lattice vertices, taken from .scen
/// files as written (no half-cell shift).
struct Scenario {
  std::string map_name;
  int bucket = 0;
  int map_width = 0;
  int map_height = 0;
  Vertex s;
  Vertex g;
  std::optional<double> reference_length;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Error with the 1-based line number of the offending input line.
class LineError : public std::runtime_error {
 public:
  LineError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// MovingAI .scen: a `version 1` header, then one tab- or space-separated
/// line per query: bucket map width height sx sy gx gy optimal. Blank lines
/// are skipped. An `optimal` of 0 with s != g reads as "no reference".
std::vector<Scenario> parse_scen(std::istream& in);
std::vector<Scenario> parse_scen(std::string_view text);

struct RandomSuite {
  int size = 0;
  int density_percent = 0;
  std::uint64_t seed = 0;

  std::string name() const;
  GridMap generate() const;
};

/// Parses `random<size>-<density>-<seed>`; nullopt if `name` is not of that
/// form or out of range.
std::optional<RandomSuite> parse_random_suite(std::string_view name);

struct SamplingOptions {
  std::size_t count = 100;
  std::uint64_t seed = 1;
  /// Lower bound on the octile distance between s and g. Long-range suites
  /// set this to a fraction of the map size.
  double min_distance = 0.0;
};

/// Endpoint pairs drawn from the largest set of vertices mutually reachable
/// by legal grid moves, so every scenario is solvable. Deterministic in
/// (map, options). Fewer than `count` pairs come back only when the
/// component is too small or the distance bound cannot be met.
std::vector<Scenario> sample_scenarios(const GridMap& map,
                                       const std::string& map_name,
                                       const SamplingOptions& options);

enum class SearchKind : std::uint8_t { AStar, WeightedAStar, ThetaStar };
enum class PostKind : std::uint8_t { None, Greedy, StringPull, Hvg };

/// A planner/post-processor combination, written `search[+post]` with
/// search in {astar, wastar, wastar(W), thetastar} and post in {gpp, sp,
/// hvg}. Bare `wastar` means weight 3.
struct Algorithm {
  SearchKind search = SearchKind::AStar;
  double weight = 1.0;
  PostKind post = PostKind::None;

  std::string name() const;
  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

/// Throws std::invalid_argument on unknown names.
Algorithm parse_algorithm(std::string_view name);

struct BenchRecord {
  std::string map_name;
  std::size_t scenario = 0;
  std::string algorithm;
  /// Empty for NoPath rows.
  std::optional<double> path_length;
  double search_us = 0.0;
  double post_us = 0.0;
  double total_us = 0.0;
  bool fallback = false;
  unsigned workers = 1;
  /// Search expansions of the median run. Not part of the CSV.
  std::size_t expansions = 0;
};

using MapCorpus = std::map<std::string, GridMap, std::less<>>;

struct SuiteOptions {
  std::size_t repetitions = 5;
  bool warmup = true;
  /// Scenario x algorithm jobs run on this many threads; each job is itself
  /// single-threaded unless `post_workers` says otherwise.
  unsigned workers = 1;
  unsigned post_workers = 1;
};

/// Times every (scenario, algorithm) pair. Each job runs `repetitions` times
/// after an optional warmup, and the run with the median total time supplies
/// the reported search/post split, so total = search + post holds per row.
/// Records come back in (scenario, algorithm) input order; scenario indices
/// count per map. Throws std::invalid_argument for a missing map.
std::vector<BenchRecord> run_suite(const MapCorpus& maps,
                                   const std::vector<Scenario>& scenarios,
                                   const std::vector<Algorithm>& algorithms,
                                   const SuiteOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "map,scenario,algorithm,path_length,search_us,post_us,total_us,fallback,"
    "workers";

/// Header plus one row per record, sorted by (map, scenario, algorithm).
/// Lengths and times use 6 decimals; NoPath rows leave path_length empty.
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
/// Inverse of write_csv. Throws LineError on malformed rows.
std::vector<BenchRecord> read_csv(std::istream& in);

struct SummaryRow {
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t no_path = 0;
  /// Mean of length / astar length over scenarios where both succeeded.
  std::optional<double> mean_length_ratio;
  double median_search_us = 0.0;
  double median_post_us = 0.0;
  double median_total_us = 0.0;
};

/// One row per algorithm in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);
void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out);

enum class ReferenceKind : std::uint8_t { None, Grid, AnyAngle };

/// Key/value benchmark configuration. One `key = value` per line, `#`
/// starts a comment. Keys:
///   suite        random<size>-<density>-<seed>   (repeatable)
///   map          path to a .map file              (repeatable)
///   scen         path to a .scen file             (repeatable)
///   scenarios    pairs sampled per generated or loose map (default 100)
///   sample_seed  seed for endpoint sampling (default 1)
///   min_distance octile lower bound for sampled pairs (default 0)
///   algorithms   comma-separated Algorithm names
///   repetitions  timed runs per job (default 5)
///   warmup       true|false (default true)
///   workers      job threads (default HVG_WORKERS, else 1)
///   post_workers threads inside HVG post-processing (default 1)
///   reference    none|grid|anyangle: meaning of .scen `optimal`
/// Relative paths resolve against the config file's directory.
struct BenchConfig {
  std::vector<RandomSuite> suites;
  std::vector<std::string> map_files;
  std::vector<std::string> scen_files;
  SamplingOptions sampling;
  std::vector<Algorithm> algorithms;
  SuiteOptions suite;
  ReferenceKind reference = ReferenceKind::None;
};

/// Throws LineError on unknown keys or bad values.
BenchConfig parse_bench_config(std::istream& in);

struct LoadedSuite {
  MapCorpus maps;
  std::vector<Scenario> scenarios;
};

/// Generates random suites, loads map files and scenario files. A .scen
/// entry names its map by path; it is looked up relative to the .scen file,
/// then by file name next to it. Throws std::runtime_error for missing files.
LoadedSuite load_suite(const BenchConfig& config, const std::string& base_dir);

}  // namespace hvg
