#pragma once

#include <cstddef>
#include <vector>

#include "ceg/staging.hpp"

namespace ceg {

// Ground truth for positions, computed directly from the definition
// (isomorphism of coloured rooted subtrees) without any level structure.

struct PositionPartition {
  std::vector<std::vector<VertexId>> cells;  // sorted members, sorted cells
};

// Assigns every vertex of a staged tree an integer that is equal for two
// vertices exactly when their rooted subtrees are isomorphic, preserving
// structure, colours and edge labels.
class SubtreeEncoder {
 public:
  explicit SubtreeEncoder(const StagedTree& st);

  std::size_t code(VertexId v) const { return codes_.at(v.value); }

 private:
  std::vector<std::size_t> codes_;
};

bool subtree_isomorphic(const StagedTree& st, VertexId a, VertexId b);

inline constexpr std::size_t kDefaultMaxPairs = 10000;

// Transitive closure of pairwise subtree isomorphism over all situations.
// Throws kTooLarge when the number of situation pairs exceeds `max_pairs`.
PositionPartition positions_brute_force(const StagedTree& st,
                                        std::size_t max_pairs = kDefaultMaxPairs);

}  // namespace ceg
