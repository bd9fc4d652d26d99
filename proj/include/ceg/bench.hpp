#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ceg/staging.hpp"

namespace ceg {

// One row of the baseline-vs-optimal comparison.
struct BenchRow {
  std::string name;
  std::size_t situations = 0;
  std::size_t depth = 0;
  double baseline_ms = 0.0;
  std::size_t baseline_vertices = 0;
  double optimal_ms = 0.0;
  std::size_t optimal_vertices = 0;
  std::size_t baseline_iterations = 0;
  std::size_t optimal_iterations = 0;
  // Vertex counts agree and the two CEGs are isomorphic.
  bool equal = false;
};

// Compacts in both modes; each timing is the fastest of `repeats` runs.
BenchRow bench_instance(const std::string& name, const StagedTree& st, std::size_t repeats = 3);

// Header plus one line per row. Timing columns are the only
// run-dependent fields.
std::string bench_csv(const std::vector<BenchRow>& rows);

double median(std::vector<double> values);

}  // namespace ceg
