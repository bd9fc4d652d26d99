#include "ceg/compaction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string_view>
#include <utility>

namespace ceg {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint32_t kNoRedirect = std::numeric_limits<std::uint32_t>::max();

using Signature = std::vector<std::pair<std::string_view, VertexId>>;

// Orders signatures and counts how many comparisons the ordering needed.
struct CountingLess {
  std::size_t* counter;
  bool operator()(const Signature& a, const Signature& b) const {
    ++*counter;
    return a < b;
  }
};

Signature signature_of(const ColouredGraph& graph, VertexId v) {
  Signature sig;
  for (const Edge& e : graph.out_edges(v)) sig.emplace_back(e.label, e.target);
  std::sort(sig.begin(), sig.end());
  return sig;
}

std::string sink_key(const EventTree& tree) {
  std::string key = "w_inf";
  while (tree.find(key)) key += '_';
  return key;
}

}  // namespace

std::string_view to_string(CompactionMode mode) {
  return mode == CompactionMode::kOptimal ? "optimal" : "baseline";
}

std::string_view to_string(StopReason reason) {
  return reason == StopReason::kOptimalFixpoint ? "OptimalFixpoint" : "FullDepth";
}

ColouredGraph as_graph(const StagedTree& st) {
  const EventTree& tree = st.tree();
  std::vector<GraphVertex> vertices;
  vertices.reserve(tree.vertex_count());
  for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
    VertexId v{i};
    std::optional<Colour> colour;
    if (!tree.is_leaf(v)) colour = st.colour(v);
    vertices.push_back(GraphVertex{v, tree.key(v), std::move(colour)});
  }
  std::vector<Edge> edges(tree.edges().begin(), tree.edges().end());
  return ColouredGraph(ColouredGraph::Trusted{}, std::move(vertices),
                       std::move(edges), tree.root(), std::nullopt);
}

ColouredGraph merge_leaves(const StagedTree& st) {
  const EventTree& tree = st.tree();
  VertexId sink{static_cast<std::uint32_t>(tree.vertex_count())};
  std::vector<GraphVertex> vertices;
  for (VertexId v : tree.situations())
    vertices.push_back(GraphVertex{v, tree.key(v), st.colour(v)});
  vertices.push_back(GraphVertex{sink, sink_key(tree), std::nullopt});

  std::vector<Edge> edges(tree.edges().begin(), tree.edges().end());
  for (Edge& e : edges)
    if (tree.is_leaf(e.target)) e.target = sink;
  return ColouredGraph(ColouredGraph::Trusted{}, std::move(vertices),
                       std::move(edges), tree.root(), sink);
}

Cells refine_to_positions(const ColouredGraph& graph, const Cells& stage_cells,
                          std::size_t* comparisons) {
  std::size_t local = 0;
  std::size_t* counter = comparisons ? comparisons : &local;
  Cells out;
  for (const auto& cell : stage_cells) {
    std::map<Signature, std::size_t, CountingLess> seen{CountingLess{counter}};
    std::size_t first = out.size();
    for (VertexId v : cell) {
      auto [it, inserted] =
          seen.try_emplace(signature_of(graph, v), out.size() - first);
      if (inserted) out.emplace_back();
      out[first + it->second].push_back(v);
    }
  }
  return out;
}

ColouredGraph merge_level(const ColouredGraph& graph, const Cells& position_cells) {
  std::uint32_t max_id = 0;
  for (const GraphVertex& v : graph.vertices()) max_id = std::max(max_id, v.id.value);
  std::vector<std::uint32_t> redirect(max_id + 1, kNoRedirect);
  bool any = false;
  for (const auto& cell : position_cells) {
    for (std::size_t i = 1; i < cell.size(); ++i) {
      redirect[cell[i].value] = cell.front().value;
      any = true;
    }
  }
  if (!any) return graph;

  std::vector<GraphVertex> vertices;
  vertices.reserve(graph.vertex_count());
  for (const GraphVertex& v : graph.vertices())
    if (redirect[v.id.value] == kNoRedirect) vertices.push_back(v);

  std::vector<Edge> edges;
  edges.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    if (redirect[e.source.value] != kNoRedirect) continue;
    Edge copy = e;
    if (redirect[e.target.value] != kNoRedirect)
      copy.target = VertexId{redirect[e.target.value]};
    edges.push_back(std::move(copy));
  }
  return ColouredGraph(ColouredGraph::Trusted{}, std::move(vertices),
                       std::move(edges), graph.root(), graph.sink());
}

CompactionResult compact(const StagedTree& st, const CompactionOptions& options) {
  const auto start = Clock::now();
  std::chrono::nanoseconds observing{0};
  auto observe = [&](std::size_t index, const ColouredGraph& g) {
    if (!options.observer) return;
    const auto t = Clock::now();
    options.observer(index, g);
    observing += Clock::now() - t;
  };

  MergeTrace trace;
  trace.mode = options.mode;
  trace.depth = depth(st.tree());
  trace.initial = {st.tree().vertex_count(), st.tree().edge_count()};
  if (options.observer) observe(0, as_graph(st));

  auto t = Clock::now();
  ColouredGraph graph = merge_leaves(st);
  trace.leaf_merge_elapsed = Clock::now() - t;
  trace.after_leaf_merge = {graph.vertex_count(), graph.edge_count()};
  observe(1, graph);

  // Merging preserves paths, hence every sink distance: levels computed on
  // G_1 stay valid for the whole sequence.
  const LevelMap levels = options.levels == LevelRule::kLongestPath
                              ? height_partition(graph)
                              : distance_partition(graph);

  trace.stop_reason = StopReason::kFullDepth;
  for (std::size_t level = 1; level < trace.depth; ++level) {
    t = Clock::now();
    IterationRecord record;
    record.graph_index = level + 1;
    record.level = level;
    auto found = levels.find(level);
    if (found != levels.end()) {
      record.consumed = found->second;
      record.stage_cells = stages_at_level(st, found->second);
      record.position_cells =
          refine_to_positions(graph, record.stage_cells, &record.comparisons);
      for (const auto& cell : record.position_cells)
        record.representatives.push_back(cell.front());
      if (record.merged()) graph = merge_level(graph, record.position_cells);
    }
    record.size = {graph.vertex_count(), graph.edge_count()};
    record.elapsed = Clock::now() - t;
    const bool merged = record.merged();
    trace.iterations.push_back(std::move(record));
    observe(level + 1, graph);

    if (options.mode == CompactionMode::kOptimal && !merged) {
      trace.stop_reason = StopReason::kOptimalFixpoint;
      break;
    }
  }

  CompactionResult result{Ceg(std::move(graph)), std::move(trace)};
  result.trace.total_elapsed =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start) -
      observing;
  return result;
}

CompactionResult compact(const StagedTree& st, CompactionMode mode) {
  CompactionOptions options;
  options.mode = mode;
  return compact(st, options);
}

WorkSummary count_merge_work(const MergeTrace& trace) {
  WorkSummary summary;
  summary.elapsed = trace.total_elapsed;
  for (const IterationRecord& r : trace.iterations) {
    ++summary.iterations;
    if (r.merged()) ++summary.merging_iterations;
    summary.comparisons += r.comparisons;
    summary.vertices_removed += r.consumed.size() - r.representatives.size();
  }
  return summary;
}

Cells normalised(Cells cells) {
  for (auto& cell : cells) std::sort(cell.begin(), cell.end());
  std::sort(cells.begin(), cells.end());
  return cells;
}

Cells accumulated_positions(const StagedTree& st, const MergeTrace& trace) {
  Cells cells;
  std::set<VertexId> covered;
  for (const IterationRecord& r : trace.iterations) {
    for (const auto& cell : r.position_cells) {
      cells.push_back(cell);
      covered.insert(cell.begin(), cell.end());
    }
  }
  for (VertexId v : st.tree().situations())
    if (!covered.count(v)) cells.push_back({v});
  return normalised(std::move(cells));
}

}  // namespace ceg
