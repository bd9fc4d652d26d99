#include "ceg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ceg {
namespace {

struct Node {
  std::vector<std::pair<std::string, std::size_t>> children;
};

}  // namespace

GeneratedInstance random_instance(const RandomTreeParams& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto chance = [&](double p) { return unit(rng) < p; };
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  const std::size_t depth = uniform(params.min_depth, std::max(params.min_depth, params.max_depth));
  const std::size_t branching = std::max<std::size_t>(1, params.max_branching);
  const bool product = chance(params.stratified_probability);
  std::vector<std::size_t> width(depth);
  for (auto& w : width) w = uniform(1, branching);

  std::vector<Node> nodes(1);
  struct Pending {
    std::size_t node;
    std::size_t level;
    bool spine;
  };
  std::vector<Pending> stack{{0, 0, true}};
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    if (p.level == depth) continue;
    if (!p.spine && p.level > 0 &&
        chance(product ? params.truncation_probability : params.leaf_probability))
      continue;
    std::size_t k = product ? width[p.level] : uniform(1, branching);
    for (std::size_t j = 0; j < k; ++j) {
      std::string label = product ? "x" + std::to_string(p.level) + "_" + std::to_string(j)
                                  : "o" + std::to_string(j);
      nodes[p.node].children.emplace_back(std::move(label), nodes.size());
      stack.push_back({nodes.size(), p.level + 1, p.spine && j == 0});
      nodes.emplace_back();
    }
  }

  // Stages: situations with the same labels may share one of a few stages.
  std::map<std::vector<std::string>, std::vector<std::size_t>> classes;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].children.empty()) continue;
    std::vector<std::string> labels;
    for (const auto& c : nodes[v].children) labels.push_back(c.first);
    std::sort(labels.begin(), labels.end());
    classes[labels].push_back(v);
  }
  std::vector<std::vector<std::size_t>> stages;
  for (const auto& [labels, members] : classes) {
    std::size_t slots = members.size() >= 4 ? uniform(1, 2) : 1;
    std::vector<std::size_t> slot_stage(slots, static_cast<std::size_t>(-1));
    for (std::size_t v : members) {
      if (!chance(params.stage_density)) {
        stages.push_back({v});
        continue;
      }
      std::size_t s = uniform(0, slots - 1);
      if (slot_stage[s] == static_cast<std::size_t>(-1)) {
        slot_stage[s] = stages.size();
        stages.emplace_back();
      }
      stages[slot_stage[s]].push_back(v);
    }
  }

  // Probabilities: drawn for the first member, copied to the rest by label.
  std::vector<std::map<std::string, double>> theta(nodes.size());
  std::exponential_distribution<double> gamma1(1.0);
  for (const auto& stage : stages) {
    const Node& first = nodes[stage.front()];
    std::vector<double> w;
    double total = 0.0;
    for (std::size_t j = 0; j < first.children.size(); ++j) {
      w.push_back(gamma1(rng) + 1e-6);
      total += w.back();
    }
    std::map<std::string, double> by_label;
    double assigned = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      double p = j + 1 == w.size() ? 1.0 - assigned : w[j] / total;
      assigned += p;
      by_label[first.children[j].first] = p;
    }
    for (std::size_t v : stage) theta[v] = by_label;
  }

  auto key = [](std::size_t i) { return "n" + std::to_string(i); };
  std::vector<EdgeSpec> specs;
  for (std::size_t v = 0; v < nodes.size(); ++v)
    for (const auto& [label, child] : nodes[v].children)
      specs.push_back(EdgeSpec{key(v), key(child), label, theta[v].at(label), std::nullopt,
                               std::nullopt});
  EventTree tree = construct_tree(specs);

  StagePartition partition;
  for (const auto& stage : stages) {
    Stage s;
    for (std::size_t v : stage) s.members.push_back(*tree.find(key(v)));
    partition.stages.push_back(std::move(s));
  }
  return GeneratedInstance{std::move(tree), std::move(partition)};
}

StagedTree random_staged_tree(const RandomTreeParams& params, std::mt19937_64& rng) {
  GeneratedInstance instance = random_instance(params, rng);
  return apply_staging(instance.tree, instance.partition);
}

}  // namespace ceg
