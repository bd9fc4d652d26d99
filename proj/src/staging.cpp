#include "ceg/staging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace ceg {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string trivial_colour(const std::vector<std::string>& root_path) {
  std::string out(1, kTrivialColourPrefix);
  for (std::size_t i = 0; i < root_path.size(); ++i) {
    if (i) out += '/';
    for (char c : root_path[i]) {
      if (c == '/' || c == '\\') out += '\\';
      out += c;
    }
  }
  return out;
}

std::vector<std::string> canonical_out_labels(const EventTree& tree,
                                              const LabelEquivalence& eq,
                                              VertexId v) {
  std::vector<std::string> labels;
  for (const Edge& e : tree.out_edges(v))
    labels.push_back(canonical_label(eq, e.label));
  std::sort(labels.begin(), labels.end());
  return labels;
}

std::map<std::string, std::optional<double>> thetas_by_label(
    const EventTree& tree, const LabelEquivalence& eq, VertexId v) {
  std::map<std::string, std::optional<double>> out;
  for (const Edge& e : tree.out_edges(v))
    out.emplace(canonical_label(eq, e.label), e.theta);
  return out;
}

std::string describe(const EventTree& tree, std::span<const VertexId> vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += "'" + tree.key(vs[i]) + "'";
  }
  return out;
}

std::vector<std::size_t> root_path_ranks(const EventTree& tree) {
  std::vector<std::vector<std::string>> path(tree.vertex_count());
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v)
    path[v] = tree.root_path(VertexId{v});
  std::vector<std::size_t> order(tree.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return path[a] < path[b]; });
  std::vector<std::size_t> rank(tree.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

}  // namespace

std::string canonical_label(const LabelEquivalence& equivalence,
                            const std::string& label) {
  std::vector<std::string> chain{label};
  std::set<std::string> seen{label};
  for (;;) {
    auto it = equivalence.find(chain.back());
    if (it == equivalence.end() || it->second == chain.back())
      return chain.back();
    if (!seen.insert(it->second).second) {
      auto start = std::find(chain.begin(), chain.end(), it->second);
      return *std::min_element(start, chain.end());
    }
    chain.push_back(it->second);
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMissingSituation: return "MissingSituation";
    case ViolationKind::kDuplicateMembership: return "DuplicateMembership";
    case ViolationKind::kEmptyStage: return "EmptyStage";
    case ViolationKind::kLabelMismatch: return "LabelMismatch";
    case ViolationKind::kThetaMismatch: return "ThetaMismatch";
    case ViolationKind::kDuplicateCanonicalLabel: return "DuplicateCanonicalLabel";
    case ViolationKind::kDuplicateColour: return "DuplicateColour";
    case ViolationKind::kReservedColour: return "ReservedColour";
    case ViolationKind::kEquivalenceCycle: return "EquivalenceCycle";
  }
  return "Unknown";
}

InvalidPartitionError::InvalidPartitionError(std::vector<Violation> violations)
    : Error(ErrorCode::kInvalidPartition,
            std::to_string(violations.size()) + " violation(s)"),
      violations_(std::move(violations)) {}

std::vector<Violation> validate_stage_partition(const EventTree& tree,
                                                const StagePartition& partition,
                                                double tolerance) {
  std::vector<Violation> out;
  const LabelEquivalence& eq = partition.label_equivalence;

  std::vector<std::size_t> owner(tree.vertex_count(), kNone);
  for (std::size_t s = 0; s < partition.stages.size(); ++s) {
    const Stage& stage = partition.stages[s];
    if (stage.members.empty()) {
      out.push_back({ViolationKind::kEmptyStage, s, {}, "stage has no members"});
      continue;
    }
    for (VertexId v : stage.members) {
      tree.require(v);
      if (tree.is_leaf(v))
        throw Error(ErrorCode::kLeafInStage, "'" + tree.key(v) + "' is a leaf");
      if (owner[v.value] != kNone) {
        out.push_back({ViolationKind::kDuplicateMembership, s, {v},
                       "'" + tree.key(v) + "' belongs to more than one stage"});
      } else {
        owner[v.value] = s;
      }
    }
  }
  std::vector<VertexId> missing;
  for (VertexId v : tree.situations())
    if (owner[v.value] == kNone) missing.push_back(v);
  if (!missing.empty()) {
    out.push_back({ViolationKind::kMissingSituation, std::nullopt, missing,
                   "not covered by any stage: " + describe(tree, missing)});
  }

  std::set<std::string> cycle_heads;
  for (const auto& entry : eq) {
    std::set<std::string> seen;
    std::string at = entry.first;
    for (;;) {
      if (!seen.insert(at).second) {
        std::string head = canonical_label(eq, entry.first);
        if (cycle_heads.insert(head).second)
          out.push_back({ViolationKind::kEquivalenceCycle, std::nullopt, {},
                         "label equivalence cycles through '" + head + "'"});
        break;
      }
      auto it = eq.find(at);
      if (it == eq.end() || it->second == at) break;
      at = it->second;
    }
  }

  for (VertexId v : tree.situations()) {
    auto labels = canonical_out_labels(tree, eq, v);
    auto dup = std::adjacent_find(labels.begin(), labels.end());
    if (dup != labels.end())
      out.push_back({ViolationKind::kDuplicateCanonicalLabel, std::nullopt, {v},
                     "'" + tree.key(v) + "' has two edges canonicalised to '" +
                         *dup + "'"});
  }

  std::map<std::string, std::size_t> colour_owner;
  for (std::size_t s = 0; s < partition.stages.size(); ++s) {
    const Stage& stage = partition.stages[s];
    if (stage.colour) {
      const std::string& name = stage.colour->name;
      if (stage.members.size() > 1 && !name.empty() &&
          name.front() == kTrivialColourPrefix)
        out.push_back({ViolationKind::kReservedColour, s, {},
                       "colour '" + name + "' uses the reserved prefix"});
      auto [it, inserted] = colour_owner.emplace(name, s);
      if (!inserted)
        out.push_back({ViolationKind::kDuplicateColour, s, {},
                       "colour '" + name + "' is used by stages " +
                           std::to_string(it->second) + " and " +
                           std::to_string(s)});
    }
    if (stage.members.size() < 2) continue;

    VertexId first = stage.members.front();
    auto ref_labels = canonical_out_labels(tree, eq, first);
    auto ref_theta = thetas_by_label(tree, eq, first);
    for (std::size_t i = 1; i < stage.members.size(); ++i) {
      VertexId v = stage.members[i];
      if (canonical_out_labels(tree, eq, v) != ref_labels) {
        out.push_back({ViolationKind::kLabelMismatch, s, {first, v},
                       "'" + tree.key(first) + "' and '" + tree.key(v) +
                           "' have different edge labels"});
        continue;
      }
      for (const auto& [label, theta] : thetas_by_label(tree, eq, v)) {
        const auto& ref = ref_theta.at(label);
        if (theta && ref && std::abs(*theta - *ref) > tolerance) {
          std::ostringstream msg;
          msg << "edge '" << label << "': theta " << *ref << " at '"
              << tree.key(first) << "' vs " << *theta << " at '" << tree.key(v)
              << "'";
          out.push_back({ViolationKind::kThetaMismatch, s, {first, v}, msg.str()});
        }
      }
    }
  }
  return out;
}

StagedTree::StagedTree(EventTree tree, StagePartition partition,
                       std::vector<std::size_t> path_rank)
    : tree_(std::move(tree)),
      partition_(std::move(partition)),
      stage_of_(tree_.vertex_count(), kNone),
      path_rank_(std::move(path_rank)) {
  for (std::size_t s = 0; s < partition_.stages.size(); ++s)
    for (VertexId v : partition_.stages[s].members) stage_of_[v.value] = s;
}

std::size_t StagedTree::stage_of(VertexId situation) const {
  tree_.require(situation);
  std::size_t s = stage_of_[situation.value];
  if (s == kNone)
    throw Error(ErrorCode::kIsLeaf, "'" + tree_.key(situation) + "' is a leaf");
  return s;
}

const Colour& StagedTree::colour(VertexId situation) const {
  return *partition_.stages[stage_of(situation)].colour;
}

StagedTree apply_staging(const EventTree& tree, const StagePartition& partition,
                         double tolerance) {
  auto violations = validate_stage_partition(tree, partition, tolerance);
  if (!violations.empty()) throw InvalidPartitionError(std::move(violations));

  const LabelEquivalence& eq = partition.label_equivalence;
  std::vector<EdgeSpec> specs;
  specs.reserve(tree.edge_count());
  for (const Edge& e : tree.edges()) {
    std::string label = canonical_label(eq, e.label);
    std::optional<std::string> original = e.original_label;
    if (label != e.label && !original) original = e.label;
    specs.push_back(EdgeSpec{tree.key(e.source), tree.key(e.target), label,
                             e.theta, e.count, original});
  }
  // Rebuilding from edges listed in breadth-first order reproduces the ids.
  EventTree canonical = construct_tree(specs, {}, 1.0);
  std::vector<std::size_t> rank = root_path_ranks(canonical);

  StagePartition norm;
  norm.label_equivalence = eq;
  norm.stages = partition.stages;
  for (Stage& stage : norm.stages) {
    std::sort(stage.members.begin(), stage.members.end(),
              [&](VertexId a, VertexId b) { return rank[a.value] < rank[b.value]; });
  }
  std::sort(norm.stages.begin(), norm.stages.end(),
            [&](const Stage& a, const Stage& b) {
              return rank[a.members.front().value] < rank[b.members.front().value];
            });

  std::set<std::string> taken;
  for (const Stage& stage : norm.stages)
    if (stage.colour) taken.insert(stage.colour->name);
  std::size_t next = 1;
  for (Stage& stage : norm.stages) {
    if (stage.colour) continue;
    if (stage.members.size() == 1) {
      std::string name = trivial_colour(canonical.root_path(stage.members[0]));
      for (std::size_t n = 2; taken.count(name); ++n)
        name = trivial_colour(canonical.root_path(stage.members[0])) + "#" +
               std::to_string(n);
      taken.insert(name);
      stage.colour = Colour{name};
      continue;
    }
    std::string name;
    do {
      name = "u" + std::to_string(next++);
    } while (taken.count(name));
    taken.insert(name);
    stage.colour = Colour{name};
  }
  return StagedTree(std::move(canonical), std::move(norm), std::move(rank));
}

StagePartition singleton_partition(const EventTree& tree) {
  StagePartition p;
  for (VertexId v : tree.situations()) p.stages.push_back(Stage{{v}, std::nullopt});
  return p;
}

std::vector<std::vector<VertexId>> stages_at_level(
    const StagedTree& st, std::span<const VertexId> level) {
  std::map<std::size_t, std::vector<VertexId>> by_stage;
  for (VertexId v : level) by_stage[st.stage_of(v)].push_back(v);
  std::vector<std::vector<VertexId>> cells;
  for (auto& [stage, members] : by_stage) {
    std::sort(members.begin(), members.end(), [&](VertexId a, VertexId b) {
      return st.path_rank(a) < st.path_rank(b);
    });
    cells.push_back(std::move(members));
  }
  std::sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
    return st.path_rank(a.front()) < st.path_rank(b.front());
  });
  return cells;
}

StagePartition naive_exact_stager(const EventTree& tree, double tolerance,
                                  const LabelEquivalence& equivalence) {
  struct Cluster {
    std::vector<double> frequencies;
    std::size_t stage;
  };
  std::map<std::vector<std::string>, std::vector<Cluster>> groups;
  StagePartition partition;
  partition.label_equivalence = equivalence;

  for (VertexId v : tree.situations()) {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const Edge& e : tree.out_edges(v)) {
      if (!e.count)
        throw Error(ErrorCode::kZeroCountSituation,
                    "edge '" + e.label + "' out of '" + tree.key(v) + "' has no count");
      counts[canonical_label(equivalence, e.label)] += *e.count;
      total += *e.count;
    }
    if (total == 0)
      throw Error(ErrorCode::kZeroCountSituation,
                  "'" + tree.key(v) + "' has zero total count");

    std::vector<std::string> labels;
    std::vector<double> freq;
    for (const auto& [label, c] : counts) {
      labels.push_back(label);
      freq.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    if (labels.size() != tree.out_edges(v).size()) {
      // Two edges share a canonical label; validation will reject any
      // non-singleton stage built on it, so keep the vertex alone.
      partition.stages.push_back(Stage{{v}, std::nullopt});
      continue;
    }
    auto& clusters = groups[labels];
    auto match = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      for (std::size_t i = 0; i < freq.size(); ++i)
        if (std::abs(freq[i] - c.frequencies[i]) > tolerance) return false;
      return true;
    });
    if (match == clusters.end()) {
      clusters.push_back(Cluster{freq, partition.stages.size()});
      partition.stages.push_back(Stage{{v}, std::nullopt});
    } else {
      partition.stages[match->stage].members.push_back(v);
    }
  }
  return partition;
}

PathSet paths(const StagedTree& st) {
  return paths(st.tree(), [&](VertexId v) { return st.colour(v); });
}

}  // namespace ceg
