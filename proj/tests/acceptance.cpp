// Acceptance gate. `acceptance cN` runs one criterion, `acceptance all` runs
// every one. Each prints a single PASS/FAIL line followed by its numbers; the
// exit status is non-zero if any selected criterion failed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "hvg/baselines.hpp"
#include "hvg/bench.hpp"
#include "hvg/homotopy.hpp"
#include "hvg/hvg.hpp"
#include "hvg/oracle.hpp"
#include "hvg/search.hpp"
#include "support.hpp"

using namespace hvg;

namespace {

constexpr double kBoundTol = 1e-6;
constexpr double kChainTol = 1e-9;
constexpr std::size_t kBoundSuiteSize = 500;
constexpr double kBudgetRateCap = 0.05;
constexpr double kWastarExpansionShare = 0.90;
constexpr double kParallelRatioCap = 0.7;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

const std::vector<hvgtest::Instance>& bound_suite() {
  static const auto suite =
      hvgtest::random_instances(kBoundSuiteSize, 32, {0.1, 0.2, 0.3, 0.4}, 2024);
  return suite;
}

std::vector<Scenario> suite_scenarios(const GridMap& map, const std::string& name,
                                      std::size_t count, double min_distance) {
  SamplingOptions opt;
  opt.count = count;
  opt.seed = 1;
  opt.min_distance = min_distance;
  return sample_scenarios(map, name, opt);
}

// ---------------------------------------------------------------- criteria

void c1(Outcome& o) {
  std::size_t checked = 0, budget = 0, violations = 0;
  double worst = -1e300;
  for (const auto& inst : bound_suite()) {
    const auto hv = hvg_postprocess(inst.map, inst.path);
    const auto opt = homotopy_optimal(inst.map, inst.path);
    if (opt.status == OracleStatus::BudgetExceeded) {
      ++budget;
      continue;
    }
    ++checked;
    const double gap = hv.path.length() - opt.path->length();
    worst = std::max(worst, gap);
    if (gap > kBoundTol) ++violations;
  }
  const double rate = static_cast<double>(budget) / bound_suite().size();
  o.pass = violations == 0 && rate < kBudgetRateCap;
  o.detail << "instances=" << bound_suite().size() << " checked=" << checked
           << " violations=" << violations << " max(hvg-opt)=" << worst
           << " budget_exceeded_rate=" << rate;
}

void c2(Outcome& o) {
  const GridMap m = hvgtest::example_map();
  const VertexPath p = hvgtest::example_grid_path();
  using hvgtest::label;
  auto set_of = [](std::initializer_list<const char*> ls) {
    std::set<Vertex> s;
    for (const char* l : ls) s.insert(label(l));
    return s;
  };
  const std::vector<std::pair<std::set<Vertex>, std::set<Vertex>>> rows = {
      {set_of({"E5"}), set_of({"C1"})},
      {set_of({"E5"}), set_of({"C1"})},
      {set_of({"E5"}), set_of({"C1", "C3"})},
      {set_of({"E5", "C3", "C5"}), set_of({"C1", "C3"})},
      {set_of({"E5", "C3", "C5"}), set_of({"C1", "C3", "C5"})},
      {set_of({"E5", "C3", "C5"}), set_of({"C1", "C3", "C5"})},
      {set_of({"E5", "C3", "C5"}), set_of({"C1", "C3", "C5"})},
      {set_of({"E5", "C3", "C5"}), set_of({"C1", "C3", "C5"})},
  };
  std::set<Vertex> vh, vv;
  std::size_t row_matches = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ScanHits h = scan_vertex(m, p[i]);
    for (const Direction d : {Direction::Left, Direction::Right})
      if (h[d]) vh.insert(*h[d]);
    for (const Direction d : {Direction::Up, Direction::Down})
      if (h[d]) vv.insert(*h[d]);
    row_matches += vh == rows[i].first && vv == rows[i].second;
  }
  const auto nodes = collect_hvg_vertices(m, p);
  const bool nodes_ok =
      std::set<Vertex>(nodes.begin(), nodes.end()) == set_of({"E1", "C3", "C5", "B8"}) &&
      nodes.size() == 4;
  const auto out = hvg_postprocess(m, p);
  const bool path_ok =
      out.path.vertices() == std::vector<Vertex>{label("E1"), label("C5"), label("B8")};
  o.pass = row_matches == rows.size() && nodes_ok && path_ok;
  o.detail << "trace_rows=" << row_matches << "/" << rows.size()
           << " V_HVG_match=" << nodes_ok << " path=" << format_path(out.path);
}

void c3(Outcome& o) {
  std::size_t fallbacks = 0, non_taut = 0, bad_class = 0;
  for (const auto& inst : bound_suite()) {
    const auto hv = hvg_postprocess(inst.map, inst.path);
    if (hv.fallback_used) {
      ++fallbacks;
      continue;
    }
    const auto& v = hv.path.vertices();
    bool ok = true;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (inst.map.corner_class(v[i]) != CornerClass::ConvexCorner) ++bad_class;
      ok = ok && taut_at(inst.map, v[i - 1], v[i], v[i + 1]);
    }
    non_taut += !ok;
  }
  o.pass = fallbacks == 0 && non_taut == 0 && bad_class == 0;
  o.detail << "instances=" << bound_suite().size() << " fallbacks=" << fallbacks
           << " non_convex_vertices=" << bad_class << " non_taut_outputs=" << non_taut;
}

void c4(Outcome& o) {
  bool all = true;
  for (const int density : {20, 30, 40}) {
    const RandomSuite suite{512, density, 0};
    const GridMap map = suite.generate();
    const auto scen = suite_scenarios(map, suite.name(), 100, 0.0);
    std::vector<double> astar, gpp, sp, hv, theta, global;
    for (const auto& sc : scen) {
      const auto a = grid_search(map, sc.s, sc.g);
      const auto t = theta_star(map, sc.s, sc.g);
      if (!a.path || !t.path) continue;
      astar.push_back(a.path->length());
      gpp.push_back(greedy_postprocess(map, *a.path).length());
      sp.push_back(string_pull(map, *a.path).length());
      hv.push_back(hvg_postprocess(map, *a.path).path.length());
      theta.push_back(t.path->length());
      const double bound = std::min(t.path->length(), a.path->length()) + 1e-9;
      global.push_back(global_optimal_path(map, sc.s, sc.g, bound)->length());
    }
    const double ma = mean(astar), mg = mean(gpp), ms = mean(sp), mh = mean(hv),
                 mt = mean(theta), mo = mean(global);
    const bool ok = scen.size() >= 100 && astar.size() == scen.size() && mh <= mg &&
                    mg <= ma && mh <= ms && mo <= mt && mt <= ma;
    all = all && ok;
    o.detail << "\n  " << suite.name() << " n=" << astar.size() << " A*=" << ma
             << " G-PP=" << mg << " SP=" << ms << " HVG=" << mh << " Theta*=" << mt
             << " VG-opt=" << mo << (ok ? "" : "  <-- ordering violated");
  }
  o.pass = all;
}

void c5(Outcome& o) {
  const RandomSuite suite{512, 40, 0};
  MapCorpus maps;
  maps.emplace(suite.name(), suite.generate());
  const GridMap& map = maps.begin()->second;
  const auto scen = suite_scenarios(map, suite.name(), 100, 0.0);
  const auto recs = run_suite(maps, scen,
                              {parse_algorithm("astar"), parse_algorithm("wastar(3)")});
  std::size_t fewer = 0;
  std::vector<double> ta, tw;
  for (std::size_t i = 0; i < scen.size(); ++i) {
    const auto& a = recs[2 * i];
    const auto& w = recs[2 * i + 1];
    fewer += w.expansions < a.expansions;
    ta.push_back(a.search_us);
    tw.push_back(w.search_us);
  }
  std::size_t checked = 0, budget = 0, violations = 0;
  for (const auto& sc : scen) {
    SearchConfig cfg;
    cfg.heuristic_weight = 3.0;
    const auto w = grid_search(map, sc.s, sc.g, cfg);
    const auto hv = hvg_postprocess(map, *w.path);
    const auto opt = homotopy_optimal(map, *w.path);
    if (opt.status == OracleStatus::BudgetExceeded) {
      ++budget;
      continue;
    }
    ++checked;
    if (hv.path.length() > opt.path->length() + kBoundTol) ++violations;
  }
  const double share = static_cast<double>(fewer) / scen.size();
  o.pass = share >= kWastarExpansionShare && median(tw) < median(ta) && violations == 0 &&
           checked > 0;
  o.detail << "scenarios=" << scen.size() << " wA*_fewer_expansions=" << share
           << " median_search_us A*=" << median(ta) << " wA*=" << median(tw)
           << " bound_checked=" << checked << " budget_exceeded=" << budget
           << " violations=" << violations;
}

void c6(Outcome& o) {
  std::vector<double> ratios;
  double hvg_total = 0, theta_total = 0;
  for (const int size : {512, 1024, 2048}) {
    const RandomSuite suite{size, 40, 0};
    MapCorpus maps;
    maps.emplace(suite.name(), suite.generate());
    const auto scen = suite_scenarios(maps.begin()->second, suite.name(), 50, size / 2.0);
    SuiteOptions opt;
    opt.repetitions = 1;
    opt.warmup = size < 2048;
    const auto recs = run_suite(maps, scen,
                                {parse_algorithm("astar+hvg"), parse_algorithm("thetastar")},
                                opt);
    std::vector<double> r, th, tt;
    for (std::size_t i = 0; i < scen.size(); ++i) {
      r.push_back(recs[2 * i].post_us / recs[2 * i].search_us);
      th.push_back(recs[2 * i].total_us);
      tt.push_back(recs[2 * i + 1].total_us);
    }
    ratios.push_back(median(r));
    hvg_total = median(th);
    theta_total = median(tt);
    o.detail << "\n  " << suite.name() << " scenarios=" << scen.size()
             << " median(post/search)=" << median(r)
             << " median_total_ms A*+HVG=" << median(th) / 1e3
             << " Theta*=" << median(tt) / 1e3;
    if (scen.size() < 50) o.pass = false;
  }
  const bool monotone = ratios[0] >= ratios[1] && ratios[1] >= ratios[2];
  o.pass = o.pass && monotone && hvg_total < theta_total;
}

void c7(Outcome& o) {
  const GridMap map = generate_random_map(2048, 2048, 0.3, 7);
  SamplingOptions opt;
  opt.count = 40;
  opt.seed = 3;
  opt.min_distance = 1000;
  std::optional<VertexPath> input;
  for (const auto& sc : sample_scenarios(map, "m", opt)) {
    auto r = grid_search(map, sc.s, sc.g);
    if (r.path && r.path->size() >= 200) {
      input = std::move(r.path);
      break;
    }
  }
  if (!input) {
    o.pass = false;
    o.detail << "no input path with >= 200 vertices";
    return;
  }
  auto construct = [&](unsigned workers) {
    const auto nodes = collect_hvg_vertices(map, *input, workers);
    return build_visibility_graph(map, nodes, workers);
  };
  auto time_of = [&](unsigned workers) {
    std::vector<double> t;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto g = construct(workers);
      const auto t1 = std::chrono::steady_clock::now();
      t.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      if (g.node_count() == 0) return -1.0;
    }
    return median(t);
  };
  const auto ref = hvg_postprocess(map, *input, 1);
  bool identical = true;
  for (const unsigned w : {4u, 8u}) {
    const auto other = hvg_postprocess(map, *input, w);
    identical = identical && other.path == ref.path &&
                other.graph_edges == ref.graph_edges && other.graph_nodes == ref.graph_nodes;
  }
  construct(1);
  const double t1 = time_of(1);
  const double t4 = time_of(4);
  const double t8 = time_of(8);
  o.pass = identical && t8 <= kParallelRatioCap * t1;
  o.detail << "input_vertices=" << input->size() << " hvg_nodes=" << ref.graph_nodes
           << " identical_outputs=" << identical << " construct_ms w1=" << t1
           << " w4=" << t4 << " w8=" << t8 << " ratio8/1=" << t8 / t1
           << " hardware_threads=" << std::thread::hardware_concurrency();
}

void c8(Outcome& o) {
  const GridMap m = hvgtest::three_blocks_map();
  const bool same = homotopic(m, hvgtest::three_blocks_p1(), hvgtest::three_blocks_p2());
  const bool differ = !homotopic(m, hvgtest::three_blocks_p1(), hvgtest::three_blocks_p3());
  std::mt19937_64 rng(88);
  std::size_t agree = 0;
  constexpr std::size_t kSequences = 1000;
  for (std::size_t k = 0; k < kSequences; ++k) {
    CanonicalSequence seq(rng() % 13);
    for (auto& r : seq) {
      const auto x = rng() % 4;
      r = {static_cast<std::uint32_t>(x / 2), x % 2 ? RaySide::Below : RaySide::Above};
    }
    const auto forms = hvgtest::reduction_normal_forms(seq);
    agree += forms.size() == 1 && *forms.begin() == reduce(seq);
  }
  o.pass = same && differ && agree == kSequences;
  o.detail << "P1~P2=" << same << " P1!~P3=" << differ << " reduce_oracle=" << agree
           << "/" << kSequences;
}

void c9(Outcome& o) {
  constexpr std::size_t kWanted = 200;
  std::size_t l1_n = 0, l1_ok = 0, l3_n = 0, l3_ok = 0;
  for (std::uint64_t seed = 9000; (l1_n < kWanted || l3_n < kWanted) && seed < 9400; ++seed) {
    for (const auto& inst : hvgtest::random_instances(20, 24, {0.1, 0.2, 0.3, 0.4}, seed)) {
      const auto opt = homotopy_optimal(inst.map, inst.path);
      if (!opt.path) continue;
      if (const auto l1 = lemma1_check(*opt.path)) {
        ++l1_n;
        l1_ok += *l1;
      }
      if (opt.path->size() > 2) {
        ++l3_n;
        l3_ok += lemma3_check(inst.map, inst.path, *opt.path);
      }
    }
  }
  o.pass = l1_n >= kWanted && l3_n >= kWanted && l1_ok == l1_n && l3_ok == l3_n;
  o.detail << "lemma1 " << l1_ok << "/" << l1_n << " lemma3 " << l3_ok << "/" << l3_n;
}

void c10(Outcome& o) {
  std::size_t ok = 0, skipped = 0;
  for (const auto& inst : bound_suite()) {
    const auto opt = homotopy_optimal(inst.map, inst.path);
    if (!opt.path) {
      ++skipped;
      continue;
    }
    const auto global =
        global_optimal_path(inst.map, inst.s, inst.g, inst.path.length() + kChainTol);
    ok += global && global->length() <= opt.path->length() + kChainTol &&
          opt.path->length() <= inst.path.length() + kChainTol;
  }
  o.pass = ok + skipped == bound_suite().size() && skipped == 0;
  o.detail << "chain_holds=" << ok << "/" << bound_suite().size()
           << " budget_skipped=" << skipped;
}

const std::map<std::string, std::pair<const char*, std::function<void(Outcome&)>>> kCriteria = {
    {"c1", {"Class-optimum bound suite", c1}},
    {"c2", {"Worked example golden trace", c2}},
    {"c3", {"Tautness of HVG outputs", c3}},
    {"c4", {"Cost ordering on random512 suites", c4}},
    {"c5", {"wA*+HVG tradeoff", c5}},
    {"c6", {"Runtime-ratio scaling", c6}},
    {"c7", {"Parallelism contract", c7}},
    {"c8", {"Homotopy suite", c8}},
    {"c9", {"Lemma suites", c9}},
    {"c10", {"Oracle self-consistency", c10}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);
  if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all")) {
    wanted.clear();
    for (int i = 1; i <= 10; ++i) wanted.push_back("c" + std::to_string(i));
  }
  int failed = 0;
  for (const auto& key : wanted) {
    const auto it = kCriteria.find(key);
    if (it == kCriteria.end()) {
      std::cerr << "unknown criterion " << key << "\n";
      return 2;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it->second.second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << key << " " << it->second.first << " ("
              << secs << " s): " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
