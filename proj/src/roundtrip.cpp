#include "ceg/roundtrip.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace ceg {
namespace {

using Shape = std::pair<std::string, std::vector<std::pair<std::string, std::size_t>>>;

std::size_t canonical_code(const StagedTree& st, std::map<Shape, std::size_t>& interned) {
  const EventTree& tree = st.tree();
  std::vector<std::size_t> code(tree.vertex_count(), 0);
  // Children carry larger ids than their parent.
  for (std::size_t i = tree.vertex_count(); i-- > 0;) {
    VertexId v{static_cast<std::uint32_t>(i)};
    Shape shape;
    if (!tree.is_leaf(v)) shape.first = "c:" + st.colour(v).name;
    for (const Edge& e : tree.out_edges(v))
      shape.second.emplace_back(e.label, code[e.target.value]);
    std::sort(shape.second.begin(), shape.second.end());
    code[i] = interned.try_emplace(std::move(shape), interned.size()).first->second;
  }
  return code[tree.root().value];
}

}  // namespace

SortedPathList sort_paths(const PathSet& paths) {
  SortedPathList out{{paths.begin(), paths.end()}};
  std::stable_sort(out.paths.begin(), out.paths.end(),
                   [](const PathSignature& a, const PathSignature& b) {
                     return a.size() < b.size();
                   });
  return out;
}

SortedPathList extract_paths(const Ceg& ceg) { return sort_paths(paths(ceg)); }

ThetaTable theta_table(const Ceg& ceg) {
  ThetaTable table;
  for (const Edge& e : ceg.graph().edges()) {
    if (!e.theta) continue;
    auto [it, inserted] =
        table.try_emplace({ceg.graph().colour(e.source).name, e.label}, *e.theta);
    if (!inserted && std::abs(it->second - *e.theta) > kDefaultTolerance) {
      throw Error(ErrorCode::kColourConflict,
                  "colour '" + it->first.first + "' carries two probabilities for '" +
                      e.label + "'");
    }
  }
  return table;
}

StagedTree reconstruct(const SortedPathList& list, const ThetaTable& thetas) {
  if (list.paths.empty()) throw Error(ErrorCode::kPrefixMissing, "no paths");

  std::vector<std::vector<std::pair<std::string, std::size_t>>> children(1);
  std::vector<std::optional<Colour>> colour(1);
  std::vector<bool> ends(1, false);

  for (const PathSignature& path : list.paths) {
    if (path.steps.empty()) throw Error(ErrorCode::kPrefixMissing, "empty path");
    std::size_t at = 0;
    for (const PathStep& step : path.steps) {
      if (ends[at]) {
        throw Error(ErrorCode::kPrefixMissing,
                    "a path continues past the end of a shorter path");
      }
      if (colour[at] && *colour[at] != step.colour) {
        throw Error(ErrorCode::kColourConflict,
                    "vertex coloured both '" + colour[at]->name + "' and '" +
                        step.colour.name + "'");
      }
      colour[at] = step.colour;
      auto& kids = children[at];
      auto it = std::find_if(kids.begin(), kids.end(),
                             [&](const auto& kid) { return kid.first == step.label; });
      if (it != kids.end()) {
        at = it->second;
        continue;
      }
      std::size_t fresh = children.size();
      kids.emplace_back(step.label, fresh);
      children.emplace_back();
      colour.emplace_back();
      ends.push_back(false);
      at = fresh;
    }
    if (!children[at].empty()) {
      throw Error(ErrorCode::kPrefixMissing,
                  "a path ends inside another path");
    }
    ends[at] = true;
  }

  auto key = [](std::size_t i) { return "s" + std::to_string(i); };
  std::vector<EdgeSpec> specs;
  for (std::size_t v = 0; v < children.size(); ++v) {
    for (const auto& [label, child] : children[v]) {
      std::optional<double> theta;
      auto it = thetas.find({colour[v]->name, label});
      if (it != thetas.end()) theta = it->second;
      specs.push_back(EdgeSpec{key(v), key(child), label, theta, std::nullopt, std::nullopt});
    }
  }
  EventTree tree = construct_tree(specs);

  std::map<Colour, std::size_t> stage_of_colour;
  StagePartition partition;
  for (VertexId v : tree.situations()) {
    // Keys survive construction, so "s<n>" recovers the builder index.
    std::size_t builder = std::stoul(tree.key(v).substr(1));
    const Colour& c = *colour[builder];
    auto [it, inserted] = stage_of_colour.try_emplace(c, partition.stages.size());
    if (inserted) partition.stages.push_back(Stage{{}, c});
    partition.stages[it->second].members.push_back(v);
  }
  try {
    return apply_staging(tree, partition);
  } catch (const InvalidPartitionError& e) {
    std::string detail = "recovered stages are inconsistent";
    if (!e.violations().empty()) detail += ": " + e.violations().front().detail;
    throw Error(ErrorCode::kColourConflict, detail);
  }
}

StagedTree reconstruct(const Ceg& ceg) {
  return reconstruct(extract_paths(ceg), theta_table(ceg));
}

bool isomorphic(const StagedTree& a, const StagedTree& b) {
  if (a.tree().vertex_count() != b.tree().vertex_count()) return false;
  std::map<Shape, std::size_t> interned;
  return canonical_code(a, interned) == canonical_code(b, interned);
}

bool isomorphic(const Ceg& a, const Ceg& b) {
  const ColouredGraph& ga = a.graph();
  const ColouredGraph& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count())
    return false;

  std::unordered_map<VertexId, VertexId> forward;
  std::unordered_map<VertexId, VertexId> backward;
  auto bind = [&](VertexId x, VertexId y) {
    auto f = forward.find(x);
    auto r = backward.find(y);
    if (f != forward.end() || r != backward.end())
      return f != forward.end() && r != backward.end() && f->second == y &&
             r->second == x;
    forward.emplace(x, y);
    backward.emplace(y, x);
    return true;
  };

  if (!bind(a.root(), b.root()) || !bind(a.sink(), b.sink())) return false;
  std::deque<std::pair<VertexId, VertexId>> queue{{a.root(), b.root()}};
  std::unordered_map<VertexId, bool> expanded;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    if (expanded[x]) continue;
    expanded[x] = true;
    if (ga.colour(x) != gb.colour(y)) return false;
    auto ox = ga.out_edges(x);
    auto oy = gb.out_edges(y);
    if (ox.size() != oy.size()) return false;
    for (const Edge& ex : ox) {
      auto match = std::find_if(oy.begin(), oy.end(),
                                [&](const Edge& ey) { return ey.label == ex.label; });
      if (match == oy.end()) return false;
      if (!bind(ex.target, match->target)) return false;
      queue.emplace_back(ex.target, match->target);
    }
  }
  return forward.size() == ga.vertex_count();
}

}  // namespace ceg
