// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Instance counts, seeds and thresholds are fixed here.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ceg/bench.hpp"
#include "ceg/compaction.hpp"
#include "ceg/generator.hpp"
#include "ceg/oracle.hpp"
#include "ceg/roundtrip.hpp"
#include "fixtures.hpp"

using namespace ceg;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kMainInstances = 500;
constexpr std::size_t kOracleInstances = 200;
constexpr std::size_t kOracleMaxSituations = 50;
constexpr std::size_t kEarlyStopInstances = 200;
constexpr std::size_t kEfficiencyInstances = 50;
constexpr std::size_t kEfficiencyDepth = 8;
constexpr std::size_t kTimingRepeats = 5;
constexpr double kMainBudgetSeconds = 30.0;
constexpr double kOracleBudgetSeconds = 10.0;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Mixed densities and shapes: depth <= 7, branching <= 4.
std::vector<StagedTree> main_corpus() {
  std::mt19937_64 rng(kSeed);
  std::vector<StagedTree> out;
  const double densities[] = {0.0, 0.3, 0.6, 0.9, 1.0};
  for (std::size_t i = 0; i < kMainInstances; ++i) {
    RandomTreeParams p;
    p.min_depth = 1;
    p.max_depth = 7;
    p.max_branching = 4;
    p.stage_density = densities[i % 5];
    out.push_back(random_staged_tree(p, rng));
  }
  return out;
}

Outcome roundtrip_identity(const std::vector<StagedTree>& corpus) {
  auto start = Clock::now();
  std::size_t ok = 0;
  for (const StagedTree& st : corpus)
    if (isomorphic(st, reconstruct(compact(st, CompactionMode::kOptimal).ceg))) ++ok;
  double secs = seconds_since(start);
  std::ostringstream d;
  d << ok << "/" << corpus.size() << " in " << std::fixed << std::setprecision(2) << secs << " s";
  return {ok == corpus.size() && secs < kMainBudgetSeconds, d.str()};
}

Outcome mode_equivalence(const std::vector<StagedTree>& corpus) {
  std::size_t ok = 0;
  for (const StagedTree& st : corpus) {
    Ceg a = compact(st, CompactionMode::kOptimal).ceg;
    Ceg b = compact(st, CompactionMode::kBaseline).ceg;
    if (a.vertex_count() == b.vertex_count() && isomorphic(a, b)) ++ok;
  }
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size())};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(kSeed + 1);
  auto start = Clock::now();
  std::size_t ok = 0, n = 0, with_merges = 0;
  while (n < kOracleInstances) {
    RandomTreeParams p;
    p.min_depth = 2;
    p.max_depth = 6;
    p.max_branching = 3;
    p.stage_density = std::array{0.3, 0.6, 0.9, 1.0}[n % 4];
    StagedTree st = random_staged_tree(p, rng);
    if (st.tree().situations().size() > kOracleMaxSituations) continue;
    ++n;
    CompactionResult r = compact(st, CompactionMode::kOptimal);
    PositionPartition oracle = positions_brute_force(st);
    if (normalised(accumulated_positions(st, r.trace)) == oracle.cells) ++ok;
    if (oracle.cells.size() < st.tree().situations().size()) ++with_merges;
  }
  double secs = seconds_since(start);
  std::ostringstream d;
  d << ok << "/" << n << " (" << with_merges << " with merges) in " << std::fixed
    << std::setprecision(2) << secs << " s";
  return {ok == n && secs < kOracleBudgetSeconds, d.str()};
}

Outcome path_preservation(const std::vector<StagedTree>& corpus) {
  std::size_t violations = 0, checked = 0;
  for (const StagedTree& st : corpus) {
    const PathSet expected = paths(st);
    PathSet previous;
    std::size_t last_v = 0, last_e = 0;
    bool first = true;
    for (CompactionMode mode : {CompactionMode::kOptimal, CompactionMode::kBaseline}) {
      CompactionOptions o;
      o.mode = mode;
      first = true;
      o.observer = [&](std::size_t, const ColouredGraph& g) {
        PathSet now = paths(g);
        ++checked;
        if (now != expected) ++violations;
        if (!first && (now != previous || g.vertex_count() > last_v || g.edge_count() > last_e))
          ++violations;
        previous = std::move(now);
        last_v = g.vertex_count();
        last_e = g.edge_count();
        first = false;
      };
      compact(st, o);
    }
  }
  return {violations == 0,
          std::to_string(violations) + " violations over " + std::to_string(checked) + " graphs"};
}

Outcome early_stop_validity() {
  std::mt19937_64 rng(kSeed + 2);
  std::size_t ok = 0, stopped_early = 0;
  for (std::size_t i = 0; i < kEarlyStopInstances; ++i) {
    RandomTreeParams p;
    p.min_depth = 3;
    p.max_depth = 7;
    p.max_branching = 3;
    p.stage_density = std::array{0.2, 0.5, 0.8, 1.0}[i % 4];
    StagedTree st = random_staged_tree(p, rng);
    CompactionResult opt = compact(st, CompactionMode::kOptimal);
    CompactionResult base = compact(st, CompactionMode::kBaseline);
    bool extra_merge = false;
    for (std::size_t k = opt.trace.iterations.size(); k < base.trace.iterations.size(); ++k)
      extra_merge |= base.trace.iterations[k].merged();
    if (opt.trace.iterations.size() < base.trace.iterations.size()) ++stopped_early;
    if (!extra_merge) ++ok;
  }
  return {ok == kEarlyStopInstances, std::to_string(ok) + "/" +
                                         std::to_string(kEarlyStopInstances) + " (" +
                                         std::to_string(stopped_early) + " stopped early)"};
}

Outcome efficiency_trend(const std::string& csv_path) {
  std::mt19937_64 rng(kSeed + 3);
  std::vector<BenchRow> rows;
  std::size_t drawn = 0;
  while (rows.size() < kEfficiencyInstances && drawn < 100 * kEfficiencyInstances) {
    ++drawn;
    RandomTreeParams p;
    p.min_depth = p.max_depth = kEfficiencyDepth;
    p.max_branching = 3;
    p.stage_density = std::array{0.3, 0.6, 0.9}[drawn % 3];
    StagedTree st = random_staged_tree(p, rng);
    if (compact(st).trace.iterations.size() >= depth(st.tree()) - 1) continue;
    std::ostringstream name;
    name << "depth8-" << std::setw(3) << std::setfill('0') << rows.size();
    rows.push_back(bench_instance(name.str(), st, kTimingRepeats));
  }
  std::vector<double> tb, to;
  bool fewer = true, equal = true;
  for (const BenchRow& r : rows) {
    tb.push_back(r.baseline_ms);
    to.push_back(r.optimal_ms);
    fewer &= r.optimal_iterations < r.baseline_iterations;
    equal &= r.equal;
  }
  std::string csv = bench_csv(rows);
  bool written = true;
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << csv;
    written = static_cast<bool>(out);
  }
  double mb = median(tb), mo = median(to);
  std::ostringstream d;
  d << rows.size() << " instances, median T_optimal " << std::fixed << std::setprecision(4) << mo
    << " ms vs T_baseline " << mb << " ms, fewer iterations " << (fewer ? "100%" : "<100%");
  if (!csv_path.empty()) d << ", CSV " << csv_path;
  return {rows.size() == kEfficiencyInstances && mo <= mb && fewer && equal && written, d.str()};
}

Outcome worked_examples() {
  struct Case {
    std::string name;
    StagedTree st;
    std::size_t expected;
  };
  EventTree disease = fixtures::disease_tree();
  // Expected counts were obtained from the brute-force oracle and are
  // cross-checked against it again below.
  std::vector<Case> cases{{"T1", fixtures::t1_staged(), 3},
                          {"T2", fixtures::t2_staged(), 3},
                          {"disease/A", apply_staging(disease, fixtures::disease_staging_a(disease)), 9},
                          {"disease/B", apply_staging(disease, fixtures::disease_staging_b(disease)), 8}};
  bool pass = true;
  std::ostringstream d;
  for (const Case& c : cases) {
    std::size_t got_opt = compact(c.st, CompactionMode::kOptimal).ceg.vertex_count();
    std::size_t got_base = compact(c.st, CompactionMode::kBaseline).ceg.vertex_count();
    std::size_t oracle = positions_brute_force(c.st).cells.size() + 1;
    bool ok = got_opt == c.expected && got_base == c.expected && oracle == c.expected;
    pass &= ok;
    d << c.name << "=" << got_opt << (ok ? "" : "!") << " ";
  }
  std::string s = d.str();
  s.pop_back();
  return {pass, s};
}

Outcome degenerate_inputs() {
  std::vector<std::pair<std::string, EventTree>> trees;
  trees.emplace_back("floret", construct_tree({{"r", "a", "a"}, {"r", "b", "b"}, {"r", "c", "c"}}));
  trees.emplace_back("chain", fixtures::chain_tree(6));
  trees.emplace_back("chain+stops", fixtures::chain_tree(6, true));
  trees.emplace_back("disease", fixtures::disease_tree());
  bool pass = true;
  std::ostringstream d;
  for (const auto& [name, tree] : trees) {
    StagedTree st = apply_staging(tree, singleton_partition(tree));
    for (CompactionMode mode : {CompactionMode::kOptimal, CompactionMode::kBaseline}) {
      std::size_t v = compact(st, mode).ceg.vertex_count();
      pass &= v == tree.situations().size() + 1;
    }
    d << name << " " << compact(st).ceg.vertex_count() << "=" << tree.situations().size() << "+1 ";
  }
  std::string s = d.str();
  s.pop_back();
  return {pass, s};
}

}  // namespace

int main(int argc, char** argv) {
  std::string csv_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--csv") csv_path = argv[i + 1];

  const std::vector<StagedTree> corpus = main_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"round-trip identity", [&] { return roundtrip_identity(corpus); }},
      {"mode equivalence", [&] { return mode_equivalence(corpus); }},
      {"oracle equivalence", [] { return oracle_equivalence(); }},
      {"path preservation", [&] { return path_preservation(corpus); }},
      {"early-stop validity", [] { return early_stop_validity(); }},
      {"efficiency trend", [&] { return efficiency_trend(csv_path); }},
      {"worked examples", [] { return worked_examples(); }},
      {"degenerate inputs", [] { return degenerate_inputs(); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
