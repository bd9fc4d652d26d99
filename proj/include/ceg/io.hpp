#pragma once

#include <filesystem>
#include <string>

#include "ceg/compaction.hpp"
#include "ceg/graph.hpp"
#include "ceg/staging.hpp"
#include "json.hpp"

namespace ceg::io {

using Json = nlohmann::ordered_json;

// Tree file:
//   {"root": key, "vertices": [{"key": k}, ...],
//    "edges": [{"src": k, "dst": k, "label": l, "count"?: n, "theta"?: p}]}
Json tree_to_json(const EventTree& tree);
EventTree tree_from_json(const Json& json, double tolerance = kDefaultTolerance);

// Staging file:
//   {"stages": [{"members": [k, ...], "colour"?: c}],
//    "label_equivalence"?: {label: canonical}}
Json staging_to_json(const EventTree& tree, const StagePartition& partition);
StagePartition staging_from_json(const Json& json, const EventTree& tree);

// CEG file:
//   {"root": k, "sink": k, "vertices": [{"key": k, "colour"?: c}],
//    "edges": [{"src": k, "dst": k, "label": l, "theta"?: p, "count"?: n}]}
Json ceg_to_json(const Ceg& ceg);
Ceg ceg_from_json(const Json& json);

// Vertex ids in the trace are written as keys of the staged tree.
Json trace_to_json(const MergeTrace& trace, const EventTree& tree);

// Graphviz rendering. Stage colours become fill colours (singleton stages
// stay white); the sink is drawn as a double circle labelled "w_inf".
std::string to_dot(const Ceg& ceg);

// Throw Error(kParseError) on I/O or syntax failure.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ceg::io
