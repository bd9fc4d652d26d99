#include "ceg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "ceg/compaction.hpp"
#include "ceg/roundtrip.hpp"

namespace ceg {

BenchRow bench_instance(const std::string& name, const StagedTree& st, std::size_t repeats) {
  using Clock = std::chrono::steady_clock;
  BenchRow row;
  row.name = name;
  row.situations = st.tree().situations().size();
  row.depth = depth(st.tree());

  double best_baseline = std::numeric_limits<double>::infinity();
  double best_optimal = std::numeric_limits<double>::infinity();
  std::optional<CompactionResult> baseline;
  std::optional<CompactionResult> optimal;
  auto timed = [&](CompactionMode mode, double& best, std::optional<CompactionResult>& keep) {
    auto t = Clock::now();
    CompactionResult result = compact(st, mode);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t).count();
    best = std::min(best, ms);
    if (!keep) keep.emplace(std::move(result));
  };
  // Alternate the modes so drift in machine load hits both alike.
  for (std::size_t r = 0; r < std::max<std::size_t>(1, repeats); ++r) {
    timed(CompactionMode::kBaseline, best_baseline, baseline);
    timed(CompactionMode::kOptimal, best_optimal, optimal);
  }

  row.baseline_ms = best_baseline;
  row.optimal_ms = best_optimal;
  row.baseline_vertices = baseline->ceg.vertex_count();
  row.optimal_vertices = optimal->ceg.vertex_count();
  row.baseline_iterations = baseline->trace.iterations.size();
  row.optimal_iterations = optimal->trace.iterations.size();
  row.equal = row.baseline_vertices == row.optimal_vertices &&
              isomorphic(baseline->ceg, optimal->ceg);
  return row;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,situations,depth,t_baseline_ms,v_baseline,t_optimal_ms,v_optimal,"
         "iterations_baseline,iterations_optimal,equal\n";
  out << std::fixed << std::setprecision(4);
  for (const BenchRow& r : rows) {
    out << r.name << ',' << r.situations << ',' << r.depth << ',' << r.baseline_ms << ','
        << r.baseline_vertices << ',' << r.optimal_ms << ',' << r.optimal_vertices << ','
        << r.baseline_iterations << ',' << r.optimal_iterations << ','
        << (r.equal ? "true" : "false") << '\n';
  }
  return out.str();
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace ceg
