#include "ceg/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

namespace ceg {
namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SubtreeEncoder::SubtreeEncoder(const StagedTree& st) {
  const EventTree& tree = st.tree();
  // A subtree is identified by its root colour plus the sorted list of
  // (edge label, child code). Leaves share the empty description.
  using Shape =
      std::pair<std::string, std::vector<std::pair<std::string, std::size_t>>>;
  std::map<Shape, std::size_t> interned;
  codes_.assign(tree.vertex_count(), 0);

  std::vector<VertexId> order;
  std::vector<VertexId> stack{tree.root()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Edge& e : tree.out_edges(v)) stack.push_back(e.target);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    Shape shape;
    if (!tree.is_leaf(v)) shape.first = "c:" + st.colour(v).name;
    for (const Edge& e : tree.out_edges(v))
      shape.second.emplace_back(e.label, codes_[e.target.value]);
    std::sort(shape.second.begin(), shape.second.end());
    auto [entry, inserted] = interned.try_emplace(std::move(shape), interned.size());
    codes_[v.value] = entry->second;
  }
}

bool subtree_isomorphic(const StagedTree& st, VertexId a, VertexId b) {
  SubtreeEncoder encoder(st);
  return encoder.code(a) == encoder.code(b);
}

PositionPartition positions_brute_force(const StagedTree& st, std::size_t max_pairs) {
  std::vector<VertexId> situations = st.tree().situations();
  const std::size_t n = situations.size();
  if (n > 1 && n * (n - 1) / 2 > max_pairs) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(n) + " situations exceed the pair budget of " +
                    std::to_string(max_pairs));
  }
  SubtreeEncoder encoder(st);
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (encoder.code(situations[i]) == encoder.code(situations[j])) sets.unite(i, j);

  std::map<std::size_t, std::vector<VertexId>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(situations[i]);
  PositionPartition out;
  for (auto& [root, members] : groups) out.cells.push_back(std::move(members));
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

}  // namespace ceg
