#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ceg/types.hpp"

namespace ceg {

// One edge of an event tree as written by a user: endpoints by key.
struct EdgeSpec {
  std::string parent;
  std::string child;
  std::string label;
  std::optional<double> theta;
  std::optional<std::uint64_t> count;
  std::optional<std::string> original_label;
};

// Level k -> vertices whose distance to the sink (or a leaf) is k. Level 0
// (leaves, sink) is omitted. Members of each level are sorted by id.
using LevelMap = std::map<std::size_t, std::vector<VertexId>>;

struct Floret {
  VertexId centre;
  std::vector<VertexId> vertices;  // centre first, then children in edge order
  std::vector<Edge> edges;
};

// Rooted directed tree with labelled edges. Immutable; built only through
// construct_tree(). Vertex ids are assigned breadth-first from the root, so
// the root is always id 0 and an edge's target id exceeds its source id.
class EventTree {
 public:
  std::size_t vertex_count() const { return keys_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexId root() const { return VertexId{0}; }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Edge> out_edges(VertexId v) const;
  // nullptr for the root.
  const Edge* in_edge(VertexId v) const;
  std::optional<VertexId> parent(VertexId v) const;

  bool contains(VertexId v) const { return v.value < keys_.size(); }
  bool is_leaf(VertexId v) const { return out_edges(v).empty(); }
  std::vector<VertexId> leaves() const;
  std::vector<VertexId> situations() const;

  const std::string& key(VertexId v) const;
  std::optional<VertexId> find(std::string_view key) const;

  // Edge labels on the path from the root to v.
  std::vector<std::string> root_path(VertexId v) const;
  // Vertex at the end of the labelled path from the root, if any.
  std::optional<VertexId> follow(std::span<const std::string> labels) const;

  // Throws kUnknownVertex when v is not a vertex of this tree.
  void require(VertexId v) const;

 private:
  friend EventTree construct_tree(std::span<const EdgeSpec> edges,
                                  std::span<const std::string> extra_keys,
                                  double theta_tolerance);

  std::vector<std::string> keys_;
  std::vector<Edge> edges_;             // grouped by source, sources ascending
  std::vector<std::size_t> out_begin_;  // CSR offsets into edges_, size n + 1
  std::vector<std::size_t> in_edge_;    // index into edges_, npos for root
  std::unordered_map<std::string, VertexId> index_;
};

// Builds a tree from keyed edges. `extra_keys` lists vertices that must also
// exist (e.g. the vertex list of a file); an isolated one is kDisconnected.
// Throws kEmptyTree, kCycleDetected, kMultipleRoots, kMultipleParents,
// kDuplicateSiblingLabel, kDisconnected, kInvalidTheta.
EventTree construct_tree(std::span<const EdgeSpec> edges,
                         std::span<const std::string> extra_keys = {},
                         double theta_tolerance = kDefaultTolerance);

// Convenience for (parent, child, label) triples.
EventTree construct_tree(
    std::initializer_list<std::tuple<std::string, std::string, std::string>>
        triples);

// Number of tuples on the longest root-to-leaf path.
std::size_t depth(const EventTree& tree);

// Situations grouped by the number of edges on their shortest path to a leaf.
LevelMap distance_partition(const EventTree& tree);
// Situations grouped by the number of edges on their longest path to a leaf.
LevelMap height_partition(const EventTree& tree);

// Root-to-leaf signatures, colouring each situation with `colour_of`.
PathSet paths(const EventTree& tree,
              const std::function<Colour(VertexId)>& colour_of);
// Root-to-leaf signatures under the trivial one-colour colouring.
PathSet paths(const EventTree& tree);

Floret floret(const EventTree& tree, VertexId v);

}  // namespace ceg
