#include "ceg/ingest.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ceg/error.hpp"

namespace ceg {
namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

// Splits one logical CSV record; may consume several physical lines when a
// quoted field spans them. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      if (!quoted) break;
      std::string next;
      if (!std::getline(in, next))
        throw Error(ErrorCode::kParseError,
                    "unterminated quote starting near line " + std::to_string(line_no));
      ++line_no;
      field += '\n';
      line = std::move(next);
      i = static_cast<std::size_t>(-1);
      continue;
    }
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::string escape_key_part(const std::string& value) {
  std::string out;
  for (char c : value) {
    if (c == '/' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

struct TrieNode {
  std::vector<std::pair<std::string, std::size_t>> children;  // insertion order
  std::uint64_t reached = 0;
  std::uint64_t ended = 0;
};

}  // namespace

RecordTable read_csv(std::istream& in, const CsvOptions& options) {
  RecordTable table;
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  if (!read_record(in, fields, line_no)) throw Error(ErrorCode::kEmptyTable, "no header row");
  for (auto& f : fields) table.columns.push_back(trim(f));
  if (table.columns.size() == 1 && table.columns.front().empty())
    throw Error(ErrorCode::kEmptyTable, "empty header row");

  while (read_record(in, fields, line_no)) {
    if (fields.size() == 1 && trim(fields.front()).empty()) continue;  // blank line
    if (fields.size() != table.columns.size()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(table.columns.size()));
    }
    std::vector<std::optional<std::string>> row;
    for (auto& f : fields) {
      std::string value = trim(f);
      bool missing = std::find(options.missing_tokens.begin(), options.missing_tokens.end(),
                               value) != options.missing_tokens.end();
      row.push_back(missing ? std::nullopt : std::optional<std::string>(std::move(value)));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

EventTree ingest_records(const RecordTable& table, std::span<const std::string> column_order,
                         const IngestOptions& options) {
  std::vector<std::size_t> columns;
  std::set<std::size_t> used;
  for (const std::string& name : column_order) {
    auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end())
      throw Error(ErrorCode::kUnknownColumn, "no column named '" + name + "'");
    std::size_t index = static_cast<std::size_t>(it - table.columns.begin());
    if (!used.insert(index).second)
      throw Error(ErrorCode::kUnknownColumn, "column '" + name + "' listed twice");
    columns.push_back(index);
  }
  if (table.rows.empty()) throw Error(ErrorCode::kEmptyTable, "table has no rows");
  if (columns.empty()) throw Error(ErrorCode::kEmptyTable, "no columns selected");

  std::vector<TrieNode> nodes(1);
  std::vector<std::string> values;
  for (const auto& row : table.rows) {
    values.clear();
    bool missing = false;
    for (std::size_t c : columns) {
      if (!row[c]) {
        missing = true;
        break;
      }
      std::string value = trim(*row[c]);
      if (value == options.sentinel) break;
      values.push_back(std::move(value));
    }
    if (missing || values.empty()) continue;

    std::size_t at = 0;
    ++nodes[0].reached;
    for (const std::string& value : values) {
      auto& kids = nodes[at].children;
      auto it = std::find_if(kids.begin(), kids.end(),
                             [&](const auto& kid) { return kid.first == value; });
      std::size_t next;
      if (it == kids.end()) {
        next = nodes.size();
        kids.emplace_back(value, next);
        nodes.emplace_back();
      } else {
        next = it->second;
      }
      at = next;
      ++nodes[at].reached;
    }
    ++nodes[at].ended;
  }
  if (nodes[0].reached == 0) throw Error(ErrorCode::kEmptyTable, "every row was dropped");

  std::vector<std::string> keys(nodes.size());
  keys[0] = "r";
  std::vector<EdgeSpec> specs;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (nodes[v].ended > 0 && !nodes[v].children.empty()) {
      throw Error(ErrorCode::kInconsistentTermination,
                  "some rows stop at '" + keys[v] + "' while others continue");
    }
    for (const auto& [value, child] : nodes[v].children) {
      keys[child] = keys[v] + "/" + escape_key_part(value);
      specs.push_back(EdgeSpec{keys[v], keys[child], value, std::nullopt,
                               nodes[child].reached, std::nullopt});
      queue.push_back(child);
    }
  }
  return construct_tree(specs);
}

EventTree add_sampling_zero(const EventTree& tree, std::span<const std::string> prefix,
                            const std::string& label) {
  auto at = tree.follow(prefix);
  if (!at) throw Error(ErrorCode::kPrefixNotFound, "no vertex at the given label path");
  if (tree.is_leaf(*at))
    throw Error(ErrorCode::kIsLeaf, "'" + tree.key(*at) + "' is a leaf");
  for (const Edge& e : tree.out_edges(*at)) {
    if (e.label == label)
      throw Error(ErrorCode::kDuplicateSiblingLabel,
                  "'" + tree.key(*at) + "' already has an edge labelled '" + label + "'");
  }

  std::vector<EdgeSpec> specs;
  specs.reserve(tree.edge_count() + 1);
  for (const Edge& e : tree.edges())
    specs.push_back(EdgeSpec{tree.key(e.source), tree.key(e.target), e.label, e.theta,
                             e.count, e.original_label});
  std::string key = tree.key(*at) + "/" + escape_key_part(label);
  while (tree.find(key)) key += '\'';
  specs.push_back(EdgeSpec{tree.key(*at), key, label, std::nullopt, 0, std::nullopt});
  return construct_tree(specs, {}, 1.0);
}

}  // namespace ceg
