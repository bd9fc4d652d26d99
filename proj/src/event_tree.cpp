#include "ceg/event_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "ceg/error.hpp"

namespace ceg {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_thetas(const EventTree& tree, double tolerance) {
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    auto out = tree.out_edges(VertexId{static_cast<std::uint32_t>(v)});
    if (out.empty()) continue;
    double sum = 0.0;
    bool all = true;
    for (const Edge& e : out) {
      if (!e.theta) {
        all = false;
        continue;
      }
      if (!(*e.theta >= 0.0 && *e.theta <= 1.0)) {
        std::ostringstream msg;
        msg << "edge '" << e.label << "' out of '" << tree.key(e.source)
            << "' has theta " << *e.theta << " outside [0, 1]";
        throw Error(ErrorCode::kInvalidTheta, msg.str());
      }
      sum += *e.theta;
    }
    if (all && std::abs(sum - 1.0) > tolerance) {
      std::ostringstream msg;
      msg << "thetas out of '" << tree.key(out.front().source) << "' sum to "
          << sum;
      throw Error(ErrorCode::kInvalidTheta, msg.str());
    }
  }
}

template <typename Pick>
std::vector<std::size_t> leaf_distances(const EventTree& tree, Pick pick) {
  // Targets always have larger ids than sources, so a reverse sweep visits
  // children before parents.
  std::vector<std::size_t> dist(tree.vertex_count(), 0);
  for (std::size_t v = tree.vertex_count(); v-- > 0;) {
    auto out = tree.out_edges(VertexId{static_cast<std::uint32_t>(v)});
    if (out.empty()) continue;
    std::size_t best = dist[out.front().target.value];
    for (const Edge& e : out) best = pick(best, dist[e.target.value]);
    dist[v] = best + 1;
  }
  return dist;
}

LevelMap levels_from(const EventTree& tree,
                     const std::vector<std::size_t>& dist) {
  LevelMap levels;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    if (dist[v] == 0) continue;
    levels[dist[v]].push_back(VertexId{static_cast<std::uint32_t>(v)});
  }
  return levels;
}

void collect_paths(const EventTree& tree, VertexId v,
                   const std::function<Colour(VertexId)>& colour_of,
                   std::vector<PathStep>& prefix, PathSet& out) {
  auto edges = tree.out_edges(v);
  if (edges.empty()) {
    out.insert(PathSignature{prefix});
    return;
  }
  Colour c = colour_of(v);
  for (const Edge& e : edges) {
    prefix.push_back(PathStep{c, e.label});
    collect_paths(tree, e.target, colour_of, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::span<const Edge> EventTree::out_edges(VertexId v) const {
  require(v);
  return std::span<const Edge>(edges_).subspan(
      out_begin_[v.value], out_begin_[v.value + 1] - out_begin_[v.value]);
}

const Edge* EventTree::in_edge(VertexId v) const {
  require(v);
  std::size_t idx = in_edge_[v.value];
  return idx == kNone ? nullptr : &edges_[idx];
}

std::optional<VertexId> EventTree::parent(VertexId v) const {
  const Edge* e = in_edge(v);
  if (!e) return std::nullopt;
  return e->source;
}

std::vector<VertexId> EventTree::leaves() const {
  std::vector<VertexId> out;
  for (std::uint32_t v = 0; v < vertex_count(); ++v)
    if (is_leaf(VertexId{v})) out.push_back(VertexId{v});
  return out;
}

std::vector<VertexId> EventTree::situations() const {
  std::vector<VertexId> out;
  for (std::uint32_t v = 0; v < vertex_count(); ++v)
    if (!is_leaf(VertexId{v})) out.push_back(VertexId{v});
  return out;
}

const std::string& EventTree::key(VertexId v) const {
  require(v);
  return keys_[v.value];
}

std::optional<VertexId> EventTree::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> EventTree::root_path(VertexId v) const {
  std::vector<std::string> labels;
  for (const Edge* e = in_edge(v); e; e = in_edge(e->source))
    labels.push_back(e->label);
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::optional<VertexId> EventTree::follow(
    std::span<const std::string> labels) const {
  VertexId at = root();
  for (const std::string& label : labels) {
    auto out = out_edges(at);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Edge& e) { return e.label == label; });
    if (it == out.end()) return std::nullopt;
    at = it->target;
  }
  return at;
}

void EventTree::require(VertexId v) const {
  if (!contains(v)) {
    std::ostringstream msg;
    msg << v << " is not a vertex of this tree";
    throw Error(ErrorCode::kUnknownVertex, msg.str());
  }
}

EventTree construct_tree(std::span<const EdgeSpec> edges,
                         std::span<const std::string> extra_keys,
                         double theta_tolerance) {
  if (edges.empty()) throw Error(ErrorCode::kEmptyTree, "no edges");

  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> slot;
  auto intern = [&](const std::string& key) {
    auto [it, inserted] = slot.try_emplace(key, keys.size());
    if (inserted) keys.push_back(key);
    return it->second;
  };

  std::vector<std::size_t> parent_edge;
  std::vector<std::vector<std::size_t>> children;
  auto grow = [&] {
    parent_edge.resize(keys.size(), kNone);
    children.resize(keys.size());
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::size_t p = intern(edges[i].parent);
    std::size_t c = intern(edges[i].child);
    grow();
    if (parent_edge[c] != kNone) {
      throw Error(ErrorCode::kMultipleParents,
                  "vertex '" + edges[i].child + "' has more than one parent");
    }
    parent_edge[c] = i;
    children[p].push_back(i);
  }
  for (const std::string& key : extra_keys) intern(key);
  grow();

  std::vector<std::size_t> roots;
  std::size_t isolated = 0;
  for (std::size_t v = 0; v < keys.size(); ++v) {
    if (parent_edge[v] != kNone) continue;
    if (children[v].empty()) {
      ++isolated;
    } else {
      roots.push_back(v);
    }
  }
  if (roots.size() > 1) {
    throw Error(ErrorCode::kMultipleRoots,
                "'" + keys[roots[0]] + "' and '" + keys[roots[1]] +
                    "' both lack a parent");
  }
  if (roots.empty()) throw Error(ErrorCode::kCycleDetected, "no root vertex");
  if (isolated > 0) {
    throw Error(ErrorCode::kDisconnected,
                "isolated vertex not connected to the tree");
  }

  // Breadth-first relabelling; edges come out grouped by source.
  EventTree tree;
  std::vector<std::size_t> new_id(keys.size(), kNone);
  std::deque<std::size_t> queue{roots.front()};
  new_id[roots.front()] = 0;
  tree.keys_.push_back(keys[roots.front()]);
  tree.out_begin_.push_back(0);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    std::set<std::string_view> labels;
    for (std::size_t ei : children[v]) {
      const EdgeSpec& spec = edges[ei];
      if (!labels.insert(spec.label).second) {
        throw Error(ErrorCode::kDuplicateSiblingLabel,
                    "vertex '" + spec.parent + "' has two edges labelled '" +
                        spec.label + "'");
      }
      std::size_t c = slot.at(spec.child);
      new_id[c] = tree.keys_.size();
      tree.keys_.push_back(spec.child);
      tree.edges_.push_back(Edge{
          VertexId{static_cast<std::uint32_t>(new_id[v])},
          VertexId{static_cast<std::uint32_t>(new_id[c])}, spec.label,
          spec.theta, spec.count, spec.original_label});
      queue.push_back(c);
    }
    tree.out_begin_.push_back(tree.edges_.size());
  }
  if (tree.keys_.size() != keys.size()) {
    throw Error(ErrorCode::kCycleDetected,
                "vertices unreachable from the root lie on a cycle");
  }

  tree.in_edge_.assign(tree.keys_.size(), kNone);
  for (std::size_t i = 0; i < tree.edges_.size(); ++i)
    tree.in_edge_[tree.edges_[i].target.value] = i;
  for (std::uint32_t v = 0; v < tree.keys_.size(); ++v)
    tree.index_.emplace(tree.keys_[v], VertexId{v});

  check_thetas(tree, theta_tolerance);
  return tree;
}

EventTree construct_tree(
    std::initializer_list<std::tuple<std::string, std::string, std::string>>
        triples) {
  std::vector<EdgeSpec> specs;
  for (const auto& [p, c, l] : triples) specs.push_back(EdgeSpec{p, c, l, std::nullopt, std::nullopt, std::nullopt});
  return construct_tree(specs);
}

std::size_t depth(const EventTree& tree) {
  return height_partition(tree).rbegin()->first;
}

LevelMap distance_partition(const EventTree& tree) {
  return levels_from(tree, leaf_distances(tree, [](std::size_t a,
                                                   std::size_t b) {
                       return std::min(a, b);
                     }));
}

LevelMap height_partition(const EventTree& tree) {
  return levels_from(tree, leaf_distances(tree, [](std::size_t a,
                                                   std::size_t b) {
                       return std::max(a, b);
                     }));
}

PathSet paths(const EventTree& tree,
              const std::function<Colour(VertexId)>& colour_of) {
  PathSet out;
  std::vector<PathStep> prefix;
  collect_paths(tree, tree.root(), colour_of, prefix, out);
  return out;
}

PathSet paths(const EventTree& tree) {
  return paths(tree, [](VertexId) { return Colour{}; });
}

Floret floret(const EventTree& tree, VertexId v) {
  auto out = tree.out_edges(v);
  if (out.empty()) throw Error(ErrorCode::kIsLeaf, tree.key(v) + " is a leaf");
  Floret f{v, {v}, {}};
  for (const Edge& e : out) {
    f.vertices.push_back(e.target);
    f.edges.push_back(e);
  }
  return f;
}

}  // namespace ceg
