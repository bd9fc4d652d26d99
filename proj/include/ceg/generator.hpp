#pragma once

#include <cstddef>
#include <random>

#include "ceg/staging.hpp"

namespace ceg {

// Random staged trees for property tests and benchmarks. Two shapes are
// mixed: product-like trees (every vertex at one depth has the same outcome
// labels, occasionally truncated to a leaf) and freely grown trees with
// i.i.d. branching whose generic labels let stages span depths. Stages group
// situations with equal label multisets with probability `stage_density`;
// probabilities are then copied from one member across each stage.
struct RandomTreeParams {
  std::size_t min_depth = 2;
  std::size_t max_depth = 6;
  std::size_t max_branching = 3;
  double stage_density = 0.5;
  double stratified_probability = 0.5;
  double truncation_probability = 0.1;  // product-like shape
  double leaf_probability = 0.25;       // free shape
};

struct GeneratedInstance {
  EventTree tree;
  StagePartition partition;
};

// The depth of the tree is drawn uniformly from [min_depth, max_depth] and
// always attained.
GeneratedInstance random_instance(const RandomTreeParams& params, std::mt19937_64& rng);
StagedTree random_staged_tree(const RandomTreeParams& params, std::mt19937_64& rng);

}  // namespace ceg
