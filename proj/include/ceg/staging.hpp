#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ceg/error.hpp"
#include "ceg/event_tree.hpp"
#include "ceg/types.hpp"

namespace ceg {

// Maps a label to the label it should be treated as. Chains are followed, so
// {"a": "b", "b": "c"} canonicalises "a" to "c".
using LabelEquivalence = std::map<std::string, std::string>;

// Idempotent. A cycle in the map resolves to its smallest member (and is
// reported by validate_stage_partition).
std::string canonical_label(const LabelEquivalence& equivalence,
                            const std::string& label);

struct Stage {
  std::vector<VertexId> members;
  std::optional<Colour> colour;
};

struct StagePartition {
  std::vector<Stage> stages;
  LabelEquivalence label_equivalence;
};

// Colours starting with this character are reserved for singleton stages.
inline constexpr char kTrivialColourPrefix = '~';

enum class ViolationKind {
  kMissingSituation,
  kDuplicateMembership,
  kEmptyStage,
  kLabelMismatch,
  kThetaMismatch,
  kDuplicateCanonicalLabel,
  kDuplicateColour,
  kReservedColour,
  kEquivalenceCycle,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> stage;  // index into StagePartition::stages
  std::vector<VertexId> vertices;
  std::string detail;
};

class InvalidPartitionError : public Error {
 public:
  explicit InvalidPartitionError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Empty result means valid. Throws kUnknownVertex for ids outside the tree
// and kLeafInStage when a stage lists a leaf.
std::vector<Violation> validate_stage_partition(
    const EventTree& tree, const StagePartition& partition,
    double tolerance = kDefaultTolerance);

// An event tree whose situations are coloured by stage. The tree carries
// canonical labels (the input label survives in Edge::original_label), and
// the partition is normalised: members sorted by root path, stages ordered by
// their smallest member's root path, every stage coloured.
class StagedTree {
 public:
  const EventTree& tree() const { return tree_; }
  const StagePartition& partition() const { return partition_; }

  std::size_t stage_of(VertexId situation) const;
  const Colour& colour(VertexId situation) const;
  bool is_trivial(std::size_t stage) const {
    return partition_.stages[stage].members.size() == 1;
  }
  // Position of v when all vertices are sorted by their root path; the
  // tie-break for every deterministic choice in the library.
  std::size_t path_rank(VertexId v) const { return path_rank_[v.value]; }

 private:
  friend StagedTree apply_staging(const EventTree&, const StagePartition&,
                                  double);
  StagedTree(EventTree tree, StagePartition partition,
             std::vector<std::size_t> path_rank);

  EventTree tree_;
  StagePartition partition_;
  std::vector<std::size_t> stage_of_;  // npos for leaves
  std::vector<std::size_t> path_rank_;
};

// Throws InvalidPartitionError when validation fails.
StagedTree apply_staging(const EventTree& tree,
                         const StagePartition& partition,
                         double tolerance = kDefaultTolerance);

// Staging in which every situation is its own stage.
StagePartition singleton_partition(const EventTree& tree);

// Cells of `level` grouped by shared stage; cells ordered by their first
// member, members ordered by root path.
std::vector<std::vector<VertexId>> stages_at_level(
    const StagedTree& st, std::span<const VertexId> level);

// Groups situations whose canonical label multisets match and whose
// relative edge frequencies agree within `tolerance`. Throws
// kZeroCountSituation when a situation lacks a positive total count.
StagePartition naive_exact_stager(const EventTree& tree,
                                  double tolerance = kDefaultTolerance,
                                  const LabelEquivalence& equivalence = {});

PathSet paths(const StagedTree& st);

}  // namespace ceg
