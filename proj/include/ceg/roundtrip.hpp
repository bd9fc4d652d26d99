#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceg/graph.hpp"
#include "ceg/staging.hpp"

namespace ceg {

// Root-to-sink signatures ordered by length, ties broken lexicographically.
struct SortedPathList {
  std::vector<PathSignature> paths;
};

SortedPathList sort_paths(const PathSet& paths);
SortedPathList extract_paths(const Ceg& ceg);

// Edge probabilities keyed by (colour, label). Same-coloured vertices share
// a stage, so one entry per pair is enough to restore every tree edge.
using ThetaTable = std::map<std::pair<std::string, std::string>, double>;

ThetaTable theta_table(const Ceg& ceg);

// Grows a staged tree from signatures in list order, creating each prefix
// vertex on demand and colouring it with the colour carried by the step that
// leaves it. Vertex keys are "s0", "s1", ... in creation order, the root
// being "s0". Throws kColourConflict when two paths colour one vertex
// differently or the recovered stages are inconsistent, kPrefixMissing when
// a path runs through the end of another path.
StagedTree reconstruct(const SortedPathList& paths, const ThetaTable& thetas = {});
StagedTree reconstruct(const Ceg& ceg);

// Structure-, label- and colour-preserving isomorphism of rooted trees,
// decided by comparing canonical forms.
bool isomorphic(const StagedTree& a, const StagedTree& b);

// Same notion for CEGs. Out-labels are distinct, so a root-anchored
// isomorphism is forced edge by edge; this checks the forced map is a
// colour-preserving bijection.
bool isomorphic(const Ceg& a, const Ceg& b);

}  // namespace ceg
