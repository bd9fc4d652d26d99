#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceg/event_tree.hpp"
#include "ceg/types.hpp"

namespace ceg {

struct GraphVertex {
  VertexId id;
  std::string key;
  std::optional<Colour> colour;  // absent for leaves and the sink
};

// Coloured directed acyclic multigraph with one root: the common shape of a
// staged tree (G_0), every intermediate graph of the compaction sequence and
// the final CEG. Parallel edges between the same pair of vertices are allowed
// as long as the out-labels of each vertex are distinct.
class ColouredGraph {
 public:
  // Validates: unique ids, endpoints exist, distinct out-labels, acyclic,
  // every vertex reachable from the root, sink (if any) has no out-edges.
  // Throws Error(kInvalidGraph | kCycleDetected | kDuplicateSiblingLabel |
  // kDisconnected).
  ColouredGraph(std::vector<GraphVertex> vertices, std::vector<Edge> edges,
                VertexId root, std::optional<VertexId> sink);

  // Skips validation; for transformations that preserve the invariants.
  struct Trusted {};
  ColouredGraph(Trusted, std::vector<GraphVertex> vertices,
                std::vector<Edge> edges, VertexId root,
                std::optional<VertexId> sink);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexId root() const { return root_; }
  std::optional<VertexId> sink() const { return sink_; }

  // Sorted by id.
  std::span<const GraphVertex> vertices() const { return vertices_; }
  // Grouped by source in vertex order.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Edge> out_edges(VertexId v) const;

  bool contains(VertexId v) const;
  const GraphVertex& vertex(VertexId v) const;
  Colour colour(VertexId v) const;  // empty colour when uncoloured
  std::optional<VertexId> find(std::string_view key) const;

 private:
  void index();
  std::size_t slot(VertexId v) const;

  std::vector<GraphVertex> vertices_;
  std::vector<Edge> edges_;
  VertexId root_;
  std::optional<VertexId> sink_;
  std::vector<std::size_t> slot_of_;    // id -> position in vertices_
  std::vector<std::size_t> out_begin_;  // CSR offsets, size |V| + 1
};

// A Chain Event Graph: a coloured graph with a single sink that is the only
// vertex without outgoing edges, and every vertex on a root-to-sink path.
class Ceg {
 public:
  // Throws Error(kInvalidGraph) when the graph is not a CEG.
  explicit Ceg(ColouredGraph graph);

  const ColouredGraph& graph() const { return graph_; }
  VertexId root() const { return graph_.root(); }
  VertexId sink() const { return *graph_.sink(); }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

 private:
  ColouredGraph graph_;
};

std::size_t depth(const ColouredGraph& graph);
// Distances measured to the nearest vertex without outgoing edges.
LevelMap distance_partition(const ColouredGraph& graph);
LevelMap height_partition(const ColouredGraph& graph);
PathSet paths(const ColouredGraph& graph);
Floret floret(const ColouredGraph& graph, VertexId v);

inline std::size_t depth(const Ceg& ceg) { return depth(ceg.graph()); }
inline PathSet paths(const Ceg& ceg) { return paths(ceg.graph()); }

}  // namespace ceg
