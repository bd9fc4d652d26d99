#include "ceg/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "ceg/error.hpp"

namespace ceg {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t slot_in(const ColouredGraph& g, VertexId v) {
  return static_cast<std::size_t>(&g.vertex(v) - g.vertices().data());
}

// Kahn's algorithm; false when the graph has a directed cycle.
bool topological_order(const ColouredGraph& g, std::vector<VertexId>& order) {
  std::vector<std::size_t> indegree(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) ++indegree[slot_in(g, e.target)];
  std::deque<VertexId> ready;
  for (const GraphVertex& v : g.vertices())
    if (indegree[slot_in(g, v.id)] == 0) ready.push_back(v.id);
  order.clear();
  while (!ready.empty()) {
    VertexId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (const Edge& e : g.out_edges(v))
      if (--indegree[slot_in(g, e.target)] == 0) ready.push_back(e.target);
  }
  return order.size() == g.vertex_count();
}

template <typename Pick>
std::vector<std::size_t> terminal_distances(const ColouredGraph& g,
                                            Pick pick) {
  std::vector<VertexId> order;
  topological_order(g, order);
  std::vector<std::size_t> dist(g.vertex_count(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto out = g.out_edges(*it);
    if (out.empty()) continue;
    std::size_t best = dist[slot_in(g, out.front().target)];
    for (const Edge& e : out) best = pick(best, dist[slot_in(g, e.target)]);
    dist[slot_in(g, *it)] = best + 1;
  }
  return dist;
}

LevelMap levels_from(const ColouredGraph& g,
                     const std::vector<std::size_t>& dist) {
  LevelMap levels;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (dist[i] > 0) levels[dist[i]].push_back(g.vertices()[i].id);
  return levels;
}

void collect_paths(const ColouredGraph& g, VertexId v,
                   std::vector<PathStep>& prefix, PathSet& out) {
  auto edges = g.out_edges(v);
  if (edges.empty()) {
    out.insert(PathSignature{prefix});
    return;
  }
  Colour c = g.colour(v);
  for (const Edge& e : edges) {
    prefix.push_back(PathStep{c, e.label});
    collect_paths(g, e.target, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ColouredGraph::ColouredGraph(Trusted, std::vector<GraphVertex> vertices,
                             std::vector<Edge> edges, VertexId root,
                             std::optional<VertexId> sink)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      root_(root),
      sink_(sink) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const GraphVertex& a, const GraphVertex& b) {
              return a.id < b.id;
            });
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.source < b.source; });
  index();
}

ColouredGraph::ColouredGraph(std::vector<GraphVertex> vertices,
                             std::vector<Edge> edges, VertexId root,
                             std::optional<VertexId> sink)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      root_(root),
      sink_(sink) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const GraphVertex& a, const GraphVertex& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i].id == vertices_[i - 1].id)
      throw Error(ErrorCode::kInvalidGraph, "duplicate vertex id");
  }
  std::set<std::string_view> keys;
  for (const GraphVertex& v : vertices_) {
    if (!keys.insert(v.key).second)
      throw Error(ErrorCode::kInvalidGraph, "duplicate vertex key '" + v.key + "'");
  }
  auto known = [&](VertexId v) {
    return std::binary_search(
        vertices_.begin(), vertices_.end(), GraphVertex{v, {}, {}},
        [](const GraphVertex& a, const GraphVertex& b) { return a.id < b.id; });
  };
  if (!known(root_)) throw Error(ErrorCode::kInvalidGraph, "root is not a vertex");
  if (sink_ && !known(*sink_))
    throw Error(ErrorCode::kInvalidGraph, "sink is not a vertex");
  for (const Edge& e : edges_) {
    if (!known(e.source) || !known(e.target))
      throw Error(ErrorCode::kInvalidGraph,
                  "edge '" + e.label + "' has an unknown endpoint");
  }
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.source < b.source; });
  index();

  for (const GraphVertex& v : vertices_) {
    std::set<std::string_view> labels;
    for (const Edge& e : out_edges(v.id)) {
      if (!labels.insert(e.label).second)
        throw Error(ErrorCode::kDuplicateSiblingLabel,
                    "vertex '" + v.key + "' has two edges labelled '" + e.label + "'");
    }
  }
  if (sink_ && !out_edges(*sink_).empty())
    throw Error(ErrorCode::kInvalidGraph, "sink has outgoing edges");

  std::vector<VertexId> order;
  if (!topological_order(*this, order))
    throw Error(ErrorCode::kCycleDetected, "graph has a directed cycle");

  std::vector<bool> seen(vertices_.size(), false);
  std::deque<VertexId> queue{root_};
  seen[slot(root_)] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const Edge& e : out_edges(v)) {
      if (!seen[slot(e.target)]) {
        seen[slot(e.target)] = true;
        ++reached;
        queue.push_back(e.target);
      }
    }
  }
  if (reached != vertices_.size())
    throw Error(ErrorCode::kDisconnected, "vertex unreachable from the root");
}

void ColouredGraph::index() {
  std::uint32_t max_id = 0;
  for (const GraphVertex& v : vertices_) max_id = std::max(max_id, v.id.value);
  slot_of_.assign(vertices_.empty() ? 0 : max_id + 1, kNone);
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    slot_of_[vertices_[i].id.value] = i;
  out_begin_.assign(vertices_.size() + 1, 0);
  for (const Edge& e : edges_) ++out_begin_[slot(e.source) + 1];
  for (std::size_t i = 1; i < out_begin_.size(); ++i)
    out_begin_[i] += out_begin_[i - 1];
}

std::size_t ColouredGraph::slot(VertexId v) const {
  if (v.value >= slot_of_.size() || slot_of_[v.value] == kNone) {
    std::ostringstream msg;
    msg << v << " is not a vertex of this graph";
    throw Error(ErrorCode::kUnknownVertex, msg.str());
  }
  return slot_of_[v.value];
}

bool ColouredGraph::contains(VertexId v) const {
  return v.value < slot_of_.size() && slot_of_[v.value] != kNone;
}

std::span<const Edge> ColouredGraph::out_edges(VertexId v) const {
  std::size_t s = slot(v);
  return std::span<const Edge>(edges_).subspan(out_begin_[s],
                                               out_begin_[s + 1] - out_begin_[s]);
}

const GraphVertex& ColouredGraph::vertex(VertexId v) const {
  return vertices_[slot(v)];
}

Colour ColouredGraph::colour(VertexId v) const {
  const auto& c = vertex(v).colour;
  return c ? *c : Colour{};
}

std::optional<VertexId> ColouredGraph::find(std::string_view key) const {
  for (const GraphVertex& v : vertices_)
    if (v.key == key) return v.id;
  return std::nullopt;
}

Ceg::Ceg(ColouredGraph graph) : graph_(std::move(graph)) {
  if (!graph_.sink()) throw Error(ErrorCode::kInvalidGraph, "CEG needs a sink");
  if (graph_.root() == *graph_.sink())
    throw Error(ErrorCode::kInvalidGraph, "root and sink coincide");
  for (const GraphVertex& v : graph_.vertices()) {
    if (v.id != *graph_.sink() && graph_.out_edges(v.id).empty())
      throw Error(ErrorCode::kInvalidGraph,
                  "vertex '" + v.key + "' has no outgoing edges but is not the sink");
  }
}

std::size_t depth(const ColouredGraph& graph) {
  auto h = terminal_distances(
      graph, [](std::size_t a, std::size_t b) { return std::max(a, b); });
  return h[slot_in(graph, graph.root())];
}

LevelMap distance_partition(const ColouredGraph& graph) {
  return levels_from(graph, terminal_distances(graph, [](std::size_t a,
                                                         std::size_t b) {
                       return std::min(a, b);
                     }));
}

LevelMap height_partition(const ColouredGraph& graph) {
  return levels_from(graph, terminal_distances(graph, [](std::size_t a,
                                                         std::size_t b) {
                       return std::max(a, b);
                     }));
}

PathSet paths(const ColouredGraph& graph) {
  PathSet out;
  std::vector<PathStep> prefix;
  collect_paths(graph, graph.root(), prefix, out);
  return out;
}

Floret floret(const ColouredGraph& graph, VertexId v) {
  auto out = graph.out_edges(v);
  if (out.empty())
    throw Error(ErrorCode::kIsLeaf, graph.vertex(v).key + " has no outgoing edges");
  Floret f{v, {v}, {}};
  for (const Edge& e : out) {
    if (std::find(f.vertices.begin(), f.vertices.end(), e.target) ==
        f.vertices.end())
      f.vertices.push_back(e.target);
    f.edges.push_back(e);
  }
  return f;
}

}  // namespace ceg
