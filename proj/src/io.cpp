#include "ceg/io.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ceg/error.hpp"

namespace ceg::io {
namespace {

template <typename F>
auto parsing(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

void put_edge_data(Json& j, const Edge& e) {
  if (e.count) j["count"] = *e.count;
  if (e.theta) j["theta"] = *e.theta;
  if (e.original_label) j["original_label"] = *e.original_label;
}

void get_edge_data(const Json& j, Edge& e) {
  if (j.contains("count")) e.count = j.at("count").get<std::uint64_t>();
  if (j.contains("theta")) e.theta = j.at("theta").get<double>();
  if (j.contains("original_label")) e.original_label = j.at("original_label").get<std::string>();
}

Json key_cells(const Cells& cells, const EventTree& tree) {
  Json out = Json::array();
  for (const auto& cell : cells) {
    Json keys = Json::array();
    for (VertexId v : cell) keys.push_back(tree.key(v));
    out.push_back(std::move(keys));
  }
  return out;
}

double micros(std::chrono::nanoseconds ns) {
  return static_cast<double>(ns.count()) / 1000.0;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

// Colour-blind-safe qualitative palette; reused cyclically.
constexpr std::array<const char*, 12> kPalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#bc80bd", "#ccebc5", "#ffed6f", "#d9d9d9"};

bool is_trivial(const Colour& c) {
  return c.name.empty() || c.name.front() == kTrivialColourPrefix;
}

}  // namespace

Json tree_to_json(const EventTree& tree) {
  Json j;
  j["root"] = tree.key(tree.root());
  Json vertices = Json::array();
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v)
    vertices.push_back(Json{{"key", tree.key(VertexId{v})}});
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const Edge& e : tree.edges()) {
    Json je{{"src", tree.key(e.source)}, {"dst", tree.key(e.target)}, {"label", e.label}};
    put_edge_data(je, e);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

EventTree tree_from_json(const Json& json, double tolerance) {
  auto [specs, keys, root] = parsing("tree", [&] {
    std::vector<EdgeSpec> specs;
    for (const Json& je : json.at("edges")) {
      Edge data;
      get_edge_data(je, data);
      specs.push_back(EdgeSpec{je.at("src").get<std::string>(), je.at("dst").get<std::string>(),
                               je.at("label").get<std::string>(), data.theta, data.count,
                               data.original_label});
    }
    std::vector<std::string> keys;
    if (json.contains("vertices"))
      for (const Json& jv : json.at("vertices")) keys.push_back(jv.at("key").get<std::string>());
    std::optional<std::string> root;
    if (json.contains("root")) root = json.at("root").get<std::string>();
    return std::make_tuple(std::move(specs), std::move(keys), std::move(root));
  });
  EventTree tree = construct_tree(specs, keys, tolerance);
  if (root && *root != tree.key(tree.root())) {
    throw Error(ErrorCode::kParseError, "declared root '" + *root + "' is not the tree's root '" +
                                            tree.key(tree.root()) + "'");
  }
  return tree;
}

Json staging_to_json(const EventTree& tree, const StagePartition& partition) {
  Json j;
  Json stages = Json::array();
  for (const Stage& stage : partition.stages) {
    Json js;
    Json members = Json::array();
    for (VertexId v : stage.members) members.push_back(tree.key(v));
    js["members"] = std::move(members);
    if (stage.colour) js["colour"] = stage.colour->name;
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  if (!partition.label_equivalence.empty()) {
    Json eq = Json::object();
    for (const auto& [from, to] : partition.label_equivalence) eq[from] = to;
    j["label_equivalence"] = std::move(eq);
  }
  return j;
}

StagePartition staging_from_json(const Json& json, const EventTree& tree) {
  return parsing("staging", [&] {
    StagePartition p;
    for (const Json& js : json.at("stages")) {
      Stage stage;
      for (const Json& jk : js.at("members")) {
        auto key = jk.get<std::string>();
        auto v = tree.find(key);
        if (!v) throw Error(ErrorCode::kUnknownVertex, "staging names unknown vertex '" + key + "'");
        stage.members.push_back(*v);
      }
      if (js.contains("colour")) stage.colour = Colour{js.at("colour").get<std::string>()};
      p.stages.push_back(std::move(stage));
    }
    if (json.contains("label_equivalence"))
      for (const auto& [from, to] : json.at("label_equivalence").items())
        p.label_equivalence[from] = to.get<std::string>();
    return p;
  });
}

Json ceg_to_json(const Ceg& ceg) {
  const ColouredGraph& g = ceg.graph();
  Json j;
  j["root"] = g.vertex(g.root()).key;
  j["sink"] = g.vertex(ceg.sink()).key;
  Json vertices = Json::array();
  for (const GraphVertex& v : g.vertices()) {
    Json jv{{"key", v.key}};
    if (v.colour) jv["colour"] = v.colour->name;
    vertices.push_back(std::move(jv));
  }
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    Json je{{"src", g.vertex(e.source).key}, {"dst", g.vertex(e.target).key}, {"label", e.label}};
    put_edge_data(je, e);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

Ceg ceg_from_json(const Json& json) {
  return parsing("ceg", [&] {
    std::vector<GraphVertex> vertices;
    std::unordered_map<std::string, VertexId> ids;
    for (const Json& jv : json.at("vertices")) {
      GraphVertex v{VertexId{static_cast<std::uint32_t>(vertices.size())},
                    jv.at("key").get<std::string>(), std::nullopt};
      if (jv.contains("colour")) v.colour = Colour{jv.at("colour").get<std::string>()};
      if (!ids.emplace(v.key, v.id).second)
        throw Error(ErrorCode::kInvalidGraph, "duplicate vertex key '" + v.key + "'");
      vertices.push_back(std::move(v));
    }
    auto lookup = [&](const std::string& key) {
      auto it = ids.find(key);
      if (it == ids.end()) throw Error(ErrorCode::kInvalidGraph, "unknown vertex '" + key + "'");
      return it->second;
    };
    std::vector<Edge> edges;
    for (const Json& je : json.at("edges")) {
      Edge e{lookup(je.at("src").get<std::string>()), lookup(je.at("dst").get<std::string>()),
             je.at("label").get<std::string>(), std::nullopt, std::nullopt, std::nullopt};
      get_edge_data(je, e);
      edges.push_back(std::move(e));
    }
    VertexId root = lookup(json.at("root").get<std::string>());
    VertexId sink = lookup(json.at("sink").get<std::string>());
    return Ceg(ColouredGraph(std::move(vertices), std::move(edges), root, sink));
  });
}

Json trace_to_json(const MergeTrace& trace, const EventTree& tree) {
  Json j;
  j["mode"] = std::string(to_string(trace.mode));
  j["depth"] = trace.depth;
  j["stop_reason"] = std::string(to_string(trace.stop_reason));
  j["initial"] = Json{{"vertices", trace.initial.vertices}, {"edges", trace.initial.edges}};
  j["after_leaf_merge"] = Json{{"vertices", trace.after_leaf_merge.vertices},
                               {"edges", trace.after_leaf_merge.edges}};
  Json iterations = Json::array();
  for (const IterationRecord& r : trace.iterations) {
    Json ji;
    ji["graph_index"] = r.graph_index;
    ji["level"] = r.level;
    ji["stage_cells"] = key_cells(r.stage_cells, tree);
    ji["position_cells"] = key_cells(r.position_cells, tree);
    Json reps = Json::array();
    for (VertexId v : r.representatives) reps.push_back(tree.key(v));
    ji["representatives"] = std::move(reps);
    ji["merged"] = r.merged();
    ji["vertices"] = r.size.vertices;
    ji["edges"] = r.size.edges;
    ji["comparisons"] = r.comparisons;
    ji["elapsed_us"] = micros(r.elapsed);
    iterations.push_back(std::move(ji));
  }
  j["iterations"] = std::move(iterations);
  WorkSummary work = count_merge_work(trace);
  j["summary"] = Json{{"iterations", work.iterations},
                      {"merging_iterations", work.merging_iterations},
                      {"comparisons", work.comparisons},
                      {"vertices_removed", work.vertices_removed}};
  j["leaf_merge_elapsed_us"] = micros(trace.leaf_merge_elapsed);
  j["total_elapsed_us"] = micros(trace.total_elapsed);
  return j;
}

std::string to_dot(const Ceg& ceg) {
  const ColouredGraph& g = ceg.graph();
  std::set<Colour> stage_colours;
  for (const GraphVertex& v : g.vertices())
    if (v.colour && !is_trivial(*v.colour)) stage_colours.insert(*v.colour);
  std::map<Colour, const char*> fill;
  std::size_t next = 0;
  for (const Colour& c : stage_colours) fill[c] = kPalette[next++ % kPalette.size()];

  std::ostringstream out;
  out << "digraph ceg {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle, style=filled, fillcolor=white];\n";
  for (const GraphVertex& v : g.vertices()) {
    out << "  " << dot_quote(v.key) << " [";
    if (v.id == ceg.sink()) {
      out << "label=\"w_inf\", shape=doublecircle";
    } else {
      out << "label=" << dot_quote(v.key);
      if (v.colour && !is_trivial(*v.colour))
        out << ", fillcolor=\"" << fill.at(*v.colour) << "\", tooltip=" << dot_quote(v.colour->name);
    }
    out << "];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << dot_quote(g.vertex(e.source).key) << " -> " << dot_quote(g.vertex(e.target).key)
        << " [label=" << dot_quote(e.label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kParseError, "failed writing '" + path.string() + "'");
}

}  // namespace ceg::io
