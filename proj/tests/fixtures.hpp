#pragma once

// Hand-built trees shared by the unit tests and the acceptance binary.

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "ceg/event_tree.hpp"
#include "ceg/staging.hpp"

namespace ceg::fixtures {

// Code of the ceg::Error thrown by f, or nullopt when nothing is thrown.
template <typename F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline VertexId id(const EventTree& tree, const std::string& key) { return *tree.find(key); }

inline Stage stage_of_keys(const EventTree& tree, std::initializer_list<const char*> keys,
                           std::optional<std::string> colour = std::nullopt) {
  Stage s;
  for (const char* k : keys) s.members.push_back(id(tree, k));
  if (colour) s.colour = Colour{*colour};
  return s;
}

// Puts every situation not named by `stages` into its own stage.
inline StagePartition complete(const EventTree& tree, std::vector<Stage> stages) {
  std::vector<bool> covered(tree.vertex_count(), false);
  for (const Stage& s : stages)
    for (VertexId v : s.members) covered[v.value] = true;
  for (VertexId v : tree.situations())
    if (!covered[v.value]) stages.push_back(Stage{{v}, std::nullopt});
  return StagePartition{std::move(stages), {}};
}

// r -a-> v1, r -b-> v2; each v_i -x-> leaf, -y-> leaf.
inline EventTree t1_tree() {
  std::vector<EdgeSpec> specs{
      {"r", "v1", "a", 0.4, std::nullopt, std::nullopt},
      {"r", "v2", "b", 0.6, std::nullopt, std::nullopt},
      {"v1", "l1", "x", 0.3, std::nullopt, std::nullopt},
      {"v1", "l2", "y", 0.7, std::nullopt, std::nullopt},
      {"v2", "l3", "x", 0.3, std::nullopt, std::nullopt},
      {"v2", "l4", "y", 0.7, std::nullopt, std::nullopt},
  };
  return construct_tree(specs);
}

inline StagedTree t1_staged() {
  EventTree tree = t1_tree();
  StagePartition p = complete(tree, {stage_of_keys(tree, {"v1", "v2"})});
  return apply_staging(tree, p);
}

// r -a-> v1, r -b-> l0; v1 -x-> l1, v1 -y-> l2.
inline EventTree t2_tree() {
  return construct_tree({{"r", "v1", "a"}, {"r", "l0", "b"}, {"v1", "l1", "x"}, {"v1", "l2", "y"}});
}

inline StagedTree t2_staged() {
  EventTree tree = t2_tree();
  return apply_staging(tree, singleton_partition(tree));
}

// Same stages on vertices with different heights above the leaves:
// r -> v1, v2; v_i -x-> leaf, -y-> c_i; c_i -p-> leaf, -q-> d_i;
// d_i -s-> leaf, -t-> leaf. Stages {v1,v2}, {c1,c2}, {d1,d2}. Every
// situation below the root is one edge from a leaf.
inline EventTree uneven_tree() {
  return construct_tree({{"r", "v1", "a"},     {"r", "v2", "b"},     {"v1", "v1x", "x"},
                         {"v1", "c1", "y"},    {"v2", "v2x", "x"},   {"v2", "c2", "y"},
                         {"c1", "c1p", "p"},   {"c1", "d1", "q"},    {"c2", "c2p", "p"},
                         {"c2", "d2", "q"},    {"d1", "d1s", "s"},   {"d1", "d1t", "t"},
                         {"d2", "d2s", "s"},   {"d2", "d2t", "t"}});
}

inline StagedTree uneven_staged() {
  EventTree tree = uneven_tree();
  StagePartition p = complete(tree, {stage_of_keys(tree, {"v1", "v2"}),
                                     stage_of_keys(tree, {"c1", "c2"}),
                                     stage_of_keys(tree, {"d1", "d2"})});
  return apply_staging(tree, p);
}

// Three settings (hospital, care home, community), each tested or not;
// a test may come back positive, which leads on to an outcome, or
// negative, which ends the path. Untested people go straight to an outcome,
// where the recovery label is written "recovery*".
inline EventTree disease_tree() {
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const std::string s : {"H", "C", "M"}) {
    const std::string setting = s == "H" ? "hospital" : s == "C" ? "care_home" : "community";
    edges.push_back({"root", s, setting});
    edges.push_back({s, "T_" + s, "test"});
    edges.push_back({s, "N_" + s, "no_test"});
    edges.push_back({"T_" + s, "P_" + s, "positive"});
    edges.push_back({"T_" + s, "neg_" + s, "negative"});
    edges.push_back({"P_" + s, "Pd_" + s, "death"});
    edges.push_back({"P_" + s, "Pr_" + s, "recovery"});
    edges.push_back({"N_" + s, "Nd_" + s, "death"});
    edges.push_back({"N_" + s, "Nr_" + s, "recovery*"});
  }
  std::vector<EdgeSpec> specs;
  for (auto& [p, c, l] : edges) specs.push_back({p, c, l, std::nullopt, std::nullopt, std::nullopt});
  return construct_tree(specs);
}

// First colouring: untested hospital and care-home outcomes share a stage,
// tested-positive outcomes share one across all settings, hospital and
// care-home test results share one, and so do their test decisions.
inline StagePartition disease_staging_a(const EventTree& tree) {
  return complete(tree, {stage_of_keys(tree, {"N_H", "N_C"}, "untested_outcome"),
                         stage_of_keys(tree, {"P_H", "P_C", "P_M"}, "positive_outcome"),
                         stage_of_keys(tree, {"T_H", "T_C"}, "test_result"),
                         stage_of_keys(tree, {"H", "C"}, "test_decision")});
}

// Second colouring: "recovery*" is read as "recovery", so the untested
// community outcome can join the tested-positive outcomes.
inline StagePartition disease_staging_b(const EventTree& tree) {
  StagePartition p =
      complete(tree, {stage_of_keys(tree, {"N_H", "N_C"}, "untested_outcome"),
                      stage_of_keys(tree, {"P_H", "P_C", "P_M", "N_M"}, "positive_outcome"),
                      stage_of_keys(tree, {"T_H", "T_C"}, "test_result"),
                      stage_of_keys(tree, {"H", "C"}, "test_decision")});
  p.label_equivalence["recovery*"] = "recovery";
  return p;
}

// c0 -go-> c1 -go-> ... -go-> c{n}. With `stops`, every situation also has
// a "stop" edge to its own leaf.
inline EventTree chain_tree(std::size_t n, bool stops = false) {
  std::vector<EdgeSpec> specs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string from = "c" + std::to_string(i);
    specs.push_back({from, "c" + std::to_string(i + 1), "go", std::nullopt, std::nullopt,
                     std::nullopt});
    if (stops)
      specs.push_back({from, "stop" + std::to_string(i), "stop", std::nullopt, std::nullopt,
                       std::nullopt});
  }
  return construct_tree(specs);
}

}  // namespace ceg::fixtures
