#include "doctest.h"

#include <set>

#include "ceg/staging.hpp"
#include "fixtures.hpp"

using namespace ceg;
using fixtures::error_code_of;
using fixtures::id;
using fixtures::stage_of_keys;

namespace {

struct Out {
  const char* label;
  std::optional<double> theta;
  std::optional<std::uint64_t> count;
};

// Root "r" with children "s1" (label a) and "s2" (label b), each with the
// given outgoing edges into fresh leaves.
EventTree two_florets(std::vector<Out> first, std::vector<Out> second) {
  std::vector<EdgeSpec> specs{{"r", "s1", "a", std::nullopt, std::nullopt, std::nullopt},
                              {"r", "s2", "b", std::nullopt, std::nullopt, std::nullopt}};
  int leaf = 0;
  for (auto [parent, outs] : {std::pair{"s1", &first}, std::pair{"s2", &second}})
    for (const Out& o : *outs)
      specs.push_back({parent, "l" + std::to_string(leaf++), o.label, o.theta, o.count,
                       std::nullopt});
  return construct_tree(specs);
}

StagePartition pair_staging(const EventTree& tree) {
  return fixtures::complete(tree, {stage_of_keys(tree, {"s1", "s2"})});
}

std::vector<ViolationKind> kinds(const std::vector<Violation>& vs) {
  std::vector<ViolationKind> out;
  for (const Violation& v : vs) out.push_back(v.kind);
  return out;
}

bool has(const std::vector<Violation>& vs, ViolationKind kind) {
  for (const Violation& v : vs)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("equal labels and probabilities form a valid stage") {
  EventTree tree = two_florets({{"x", 0.3, {}}, {"y", 0.7, {}}}, {{"x", 0.3, {}}, {"y", 0.7, {}}});
  CHECK(validate_stage_partition(tree, pair_staging(tree)).empty());
}

TEST_CASE("probabilities must be matched by label") {
  EventTree tree = two_florets({{"x", 0.3, {}}, {"y", 0.7, {}}}, {{"z", 0.3, {}}, {"y", 0.7, {}}});
  auto vs = validate_stage_partition(tree, pair_staging(tree));
  CHECK(kinds(vs) == std::vector<ViolationKind>{ViolationKind::kLabelMismatch});

  EventTree swapped =
      two_florets({{"x", 0.3, {}}, {"y", 0.7, {}}}, {{"x", 0.7, {}}, {"y", 0.3, {}}});
  vs = validate_stage_partition(swapped, pair_staging(swapped));
  // One violation per mismatched edge.
  CHECK(kinds(vs) == std::vector<ViolationKind>{ViolationKind::kThetaMismatch,
                                                ViolationKind::kThetaMismatch});

  // Edge order does not matter, only the label.
  EventTree reordered =
      two_florets({{"x", 0.3, {}}, {"y", 0.7, {}}}, {{"y", 0.7, {}}, {"x", 0.3, {}}});
  CHECK(validate_stage_partition(reordered, pair_staging(reordered)).empty());
}

TEST_CASE("label equivalence relaxes the label condition") {
  EventTree tree = two_florets({{"death", {}, {}}, {"recovery", {}, {}}},
                               {{"death", {}, {}}, {"recovery*", {}, {}}});
  StagePartition p = pair_staging(tree);
  CHECK(has(validate_stage_partition(tree, p), ViolationKind::kLabelMismatch));
  p.label_equivalence["recovery*"] = "recovery";
  CHECK(validate_stage_partition(tree, p).empty());

  StagedTree st = apply_staging(tree, p);
  const Edge& relabelled = st.tree().out_edges(id(st.tree(), "s2"))[1];
  CHECK(relabelled.label == "recovery");
  CHECK(relabelled.original_label == "recovery*");
  CHECK(st.tree().out_edges(id(st.tree(), "s1"))[1].original_label == std::nullopt);
}

TEST_CASE("canonical labels") {
  LabelEquivalence eq{{"a", "b"}, {"b", "c"}};
  CHECK(canonical_label(eq, "a") == "c");
  CHECK(canonical_label(eq, "b") == "c");
  CHECK(canonical_label(eq, "z") == "z");
  for (const char* l : {"a", "b", "c", "z"})
    CHECK(canonical_label(eq, canonical_label(eq, l)) == canonical_label(eq, l));

  LabelEquivalence cycle{{"p", "q"}, {"q", "p"}};
  CHECK(canonical_label(cycle, "q") == "p");
  CHECK(canonical_label(cycle, "p") == "p");
}

TEST_CASE("partition violations") {
  EventTree tree = two_florets({{"x", 0.3, {}}, {"y", 0.7, {}}}, {{"x", 0.3, {}}, {"y", 0.7, {}}});
  VertexId r = tree.root(), s1 = id(tree, "s1"), s2 = id(tree, "s2");

  SUBCASE("missing situation") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1}, {}}}, {}};
    CHECK(kinds(validate_stage_partition(tree, p)) ==
          std::vector<ViolationKind>{ViolationKind::kMissingSituation});
    CHECK(error_code_of([&] { apply_staging(tree, p); }) == ErrorCode::kInvalidPartition);
    try {
      apply_staging(tree, p);
    } catch (const InvalidPartitionError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0].vertices == std::vector<VertexId>{s2});
    }
  }
  SUBCASE("duplicate membership") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1, s2}, {}}, Stage{{s2}, {}}}, {}};
    CHECK(has(validate_stage_partition(tree, p), ViolationKind::kDuplicateMembership));
  }
  SUBCASE("empty stage") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1, s2}, {}}, Stage{{}, {}}}, {}};
    CHECK(kinds(validate_stage_partition(tree, p)) ==
          std::vector<ViolationKind>{ViolationKind::kEmptyStage});
  }
  SUBCASE("duplicate colour") {
    StagePartition p{{Stage{{r}, Colour{"k"}}, Stage{{s1, s2}, Colour{"k"}}}, {}};
    CHECK(kinds(validate_stage_partition(tree, p)) ==
          std::vector<ViolationKind>{ViolationKind::kDuplicateColour});
  }
  SUBCASE("reserved colour on a shared stage") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1, s2}, Colour{"~mine"}}}, {}};
    CHECK(kinds(validate_stage_partition(tree, p)) ==
          std::vector<ViolationKind>{ViolationKind::kReservedColour});
  }
  SUBCASE("equivalence cycle") {
    StagePartition p = pair_staging(tree);
    p.label_equivalence = {{"p", "q"}, {"q", "p"}};
    CHECK(has(validate_stage_partition(tree, p), ViolationKind::kEquivalenceCycle));
  }
  SUBCASE("two labels of one floret made equal") {
    StagePartition p = pair_staging(tree);
    p.label_equivalence = {{"x", "y"}};
    CHECK(has(validate_stage_partition(tree, p), ViolationKind::kDuplicateCanonicalLabel));
  }
  SUBCASE("leaf in a stage") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1, s2, id(tree, "l0")}, {}}}, {}};
    CHECK(error_code_of([&] { validate_stage_partition(tree, p); }) == ErrorCode::kLeafInStage);
  }
  SUBCASE("unknown vertex") {
    StagePartition p{{Stage{{r}, {}}, Stage{{s1, s2, VertexId{77}}, {}}}, {}};
    CHECK(error_code_of([&] { validate_stage_partition(tree, p); }) ==
          ErrorCode::kUnknownVertex);
  }
}

TEST_CASE("apply_staging colours shared stages") {
  StagedTree st = fixtures::t1_staged();
  VertexId v1 = id(st.tree(), "v1"), v2 = id(st.tree(), "v2");
  CHECK(st.colour(v1) == st.colour(v2));
  CHECK(st.colour(v1) == Colour{"u1"});
  CHECK(st.colour(st.tree().root()) != st.colour(v1));
  CHECK(st.stage_of(v1) == st.stage_of(v2));
  CHECK_FALSE(st.is_trivial(st.stage_of(v1)));
  CHECK(st.is_trivial(st.stage_of(st.tree().root())));
}

TEST_CASE("all-singleton staging shares no colour") {
  EventTree tree = fixtures::disease_tree();
  StagedTree st = apply_staging(tree, singleton_partition(tree));
  std::set<Colour> seen;
  for (VertexId v : st.tree().situations()) {
    CHECK(st.colour(v).name.front() == kTrivialColourPrefix);
    CHECK(seen.insert(st.colour(v)).second);
  }
}

TEST_CASE("derived colours follow root-path order") {
  EventTree tree = fixtures::disease_tree();
  StagePartition p = fixtures::complete(tree, {stage_of_keys(tree, {"P_M", "P_C"}),
                                               stage_of_keys(tree, {"C", "H"})});
  StagedTree st = apply_staging(tree, p);
  // "care_home" sorts before "hospital", and C's path is shorter than P_C's.
  CHECK(st.colour(id(st.tree(), "H")) == Colour{"u1"});
  CHECK(st.colour(id(st.tree(), "P_C")) == Colour{"u2"});
  const Stage& first = st.partition().stages[st.stage_of(id(st.tree(), "H"))];
  CHECK(first.members == std::vector<VertexId>{id(st.tree(), "C"), id(st.tree(), "H")});
  // Declared colours are kept.
  StagePartition named = fixtures::disease_staging_a(tree);
  StagedTree sn = apply_staging(tree, named);
  CHECK(sn.colour(id(sn.tree(), "P_M")) == Colour{"positive_outcome"});
}

TEST_CASE("apply_staging keeps the tree structure") {
  EventTree tree = fixtures::disease_tree();
  StagedTree st = apply_staging(tree, fixtures::disease_staging_b(tree));
  REQUIRE(st.tree().vertex_count() == tree.vertex_count());
  REQUIRE(st.tree().edge_count() == tree.edge_count());
  for (std::size_t i = 0; i < tree.edge_count(); ++i) {
    const Edge& a = tree.edges()[i];
    const Edge& b = st.tree().edges()[i];
    CHECK(a.source == b.source);
    CHECK(a.target == b.target);
    CHECK(b.label == canonical_label(st.partition().label_equivalence, a.label));
  }
  for (VertexId v : tree.situations()) CHECK(tree.key(v) == st.tree().key(v));
}

TEST_CASE("stages_at_level") {
  StagedTree st = fixtures::t1_staged();
  VertexId v1 = id(st.tree(), "v1"), v2 = id(st.tree(), "v2");
  std::vector<VertexId> level{v2, v1};
  CHECK(stages_at_level(st, level) == std::vector<std::vector<VertexId>>{{v1, v2}});
  std::vector<VertexId> root{st.tree().root()};
  CHECK(stages_at_level(st, root) == std::vector<std::vector<VertexId>>{{st.tree().root()}});

  EventTree tree = fixtures::disease_tree();
  StagedTree d = apply_staging(tree, fixtures::disease_staging_a(tree));
  std::vector<VertexId> mixed{id(tree, "N_H"), id(tree, "N_M"), id(tree, "N_C")};
  auto cells = stages_at_level(d, mixed);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0] == std::vector<VertexId>{id(tree, "N_C"), id(tree, "N_H")});
  CHECK(cells[1] == std::vector<VertexId>{id(tree, "N_M")});
}

TEST_CASE("naive_exact_stager groups equal relative frequencies") {
  EventTree same = two_florets({{"x", {}, 3}, {"y", {}, 7}}, {{"x", {}, 30}, {"y", {}, 70}});
  // The root needs counts too.
  std::vector<EdgeSpec> specs;
  for (const Edge& e : same.edges())
    specs.push_back({same.key(e.source), same.key(e.target), e.label, {},
                     e.count ? e.count : std::optional<std::uint64_t>(e.label == "a" ? 10 : 100),
                     {}});
  EventTree counted = construct_tree(specs);
  StagePartition p = naive_exact_stager(counted);
  CHECK(p.stages.size() == 2);
  StagedTree st = apply_staging(counted, p);
  CHECK(st.stage_of(id(counted, "s1")) == st.stage_of(id(counted, "s2")));

  auto stage_count = [](std::vector<Out> first, std::vector<Out> second) {
    EventTree t = two_florets(first, second);
    std::vector<EdgeSpec> s;
    for (const Edge& e : t.edges())
      s.push_back({t.key(e.source), t.key(e.target), e.label, {},
                   e.count ? e.count : std::optional<std::uint64_t>(5), {}});
    return naive_exact_stager(construct_tree(s)).stages.size();
  };
  CHECK(stage_count({{"x", {}, 3}, {"y", {}, 7}}, {{"x", {}, 4}, {"y", {}, 6}}) == 3);
  CHECK(stage_count({{"x", {}, 3}, {"y", {}, 7}}, {{"x", {}, 10}}) == 3);
}

TEST_CASE("naive_exact_stager needs counts") {
  EventTree tree = two_florets({{"x", {}, 0}, {"y", {}, 0}}, {{"x", {}, 1}, {"y", {}, 1}});
  CHECK(error_code_of([&] { naive_exact_stager(tree); }) == ErrorCode::kZeroCountSituation);
  CHECK(error_code_of([] { naive_exact_stager(fixtures::t2_tree()); }) ==
        ErrorCode::kZeroCountSituation);
}

TEST_CASE("staged tree paths use stage colours") {
  StagedTree st = fixtures::t1_staged();
  PathSet ps = paths(st);
  CHECK(ps.size() == 4);
  for (const PathSignature& p : ps) {
    REQUIRE(p.size() == 2);
    CHECK(p.steps[1].colour == Colour{"u1"});
  }
}
