#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "ceg/graph.hpp"
#include "ceg/staging.hpp"

namespace ceg {

using Cells = std::vector<std::vector<VertexId>>;

enum class CompactionMode {
  kOptimal,   // stop at the first level that merges nothing
  kBaseline,  // always sweep every level below the root
};

// How compaction groups vertices into levels.
enum class LevelRule {
  // Longest distance to the sink. Every child lies on a strictly lower level,
  // so a level is only examined after all of its successors are positions.
  kLongestPath,
  // Shortest distance to the sink. Incomplete on non-stratified trees where a
  // situation has children on its own level or above; kept for comparison.
  kShortestPath,
};

enum class StopReason { kOptimalFixpoint, kFullDepth };

std::string_view to_string(CompactionMode mode);
std::string_view to_string(StopReason reason);

struct GraphSize {
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

// One Step-2 iteration: turns G_{i-1} into G_i by merging level i - 1.
struct IterationRecord {
  std::size_t graph_index = 0;
  std::size_t level = 0;
  Cells stage_cells;                      // U_i
  Cells position_cells;                   // U_i*
  std::vector<VertexId> consumed;         // every vertex of the level
  std::vector<VertexId> representatives;  // one kept vertex per position cell
  GraphSize size;                         // of G_i
  std::size_t comparisons = 0;            // signature comparisons made
  std::chrono::nanoseconds elapsed{0};

  bool merged() const { return representatives.size() < consumed.size(); }
};

struct MergeTrace {
  CompactionMode mode = CompactionMode::kOptimal;
  std::size_t depth = 0;  // m
  GraphSize initial;      // G_0
  GraphSize after_leaf_merge;  // G_1
  std::vector<IterationRecord> iterations;
  StopReason stop_reason = StopReason::kFullDepth;
  std::chrono::nanoseconds leaf_merge_elapsed{0};
  std::chrono::nanoseconds total_elapsed{0};
};

struct CompactionOptions {
  CompactionMode mode = CompactionMode::kOptimal;
  LevelRule levels = LevelRule::kLongestPath;
  // Called with (i, G_i) for G_0, G_1 and every graph an iteration produces.
  std::function<void(std::size_t, const ColouredGraph&)> observer;
};

struct CompactionResult {
  Ceg ceg;
  MergeTrace trace;
};

// The staged tree as graph G_0: situations coloured, leaves uncoloured.
ColouredGraph as_graph(const StagedTree& st);

// Step 1: every leaf replaced by one sink that takes the next free id.
// Its key is "w_inf" unless a tree vertex already uses that key.
ColouredGraph merge_leaves(const StagedTree& st);

// Splits each stage cell into positions: two members share a cell iff they
// have the same (label, target) out-edges. Sub-cells keep their members in
// input order and appear in order of first member. Adds the number of
// signature comparisons to `comparisons` when provided.
Cells refine_to_positions(const ColouredGraph& graph, const Cells& stage_cells,
                          std::size_t* comparisons = nullptr);

// Keeps the first member of every cell, drops the out-edges of the others
// and redirects their in-edges to the kept member.
ColouredGraph merge_level(const ColouredGraph& graph, const Cells& position_cells);

CompactionResult compact(const StagedTree& st, const CompactionOptions& options);
CompactionResult compact(const StagedTree& st,
                         CompactionMode mode = CompactionMode::kOptimal);

struct WorkSummary {
  std::size_t iterations = 0;
  std::size_t merging_iterations = 0;
  std::size_t comparisons = 0;
  std::size_t vertices_removed = 0;
  std::chrono::nanoseconds elapsed{0};
};

WorkSummary count_merge_work(const MergeTrace& trace);

// Position partition of the staged tree's situations implied by a trace: the
// position cells of every iteration plus singletons for every situation on a
// level the trace never examined. Cells sorted, members sorted by id.
Cells accumulated_positions(const StagedTree& st, const MergeTrace& trace);

// Sorts members of each cell by id and the cells by first member.
Cells normalised(Cells cells);

}  // namespace ceg
