#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ceg/event_tree.hpp"

namespace ceg {

struct RecordTable {
  std::vector<std::string> columns;
  // nullopt marks a missing value.
  std::vector<std::vector<std::optional<std::string>>> rows;
};

struct CsvOptions {
  // Cells equal to one of these (after trimming) are read as missing.
  std::vector<std::string> missing_tokens{"", "NA", "?"};
};

// Reads a CSV with a header row (RFC 4180 quoting). Values are trimmed.
// Throws kParseError on ragged rows or unterminated quotes and kEmptyTable
// when there is no header.
RecordTable read_csv(std::istream& in, const CsvOptions& options = {});

struct IngestOptions {
  // A value that ends the row's path at that column (structural zero for
  // everything after it).
  std::string sentinel = "NA-STOP";
};

// Prefix tree over the rows' values in `column_order`, with edge counts.
// Rows with a missing value in a used column are dropped, as are rows whose
// first used value is the sentinel. Vertex keys are "r" for the root and
// "r/<value>/<value>..." below it.
// Throws kEmptyTable (no usable rows), kUnknownColumn, and
// kInconsistentTermination when some rows stop at a prefix others extend.
EventTree ingest_records(const RecordTable& table,
                         std::span<const std::string> column_order,
                         const IngestOptions& options = {});

// Adds a zero-count edge and fresh leaf under the situation reached by
// following `prefix` from the root. Throws kPrefixNotFound, kIsLeaf and
// kDuplicateSiblingLabel.
EventTree add_sampling_zero(const EventTree& tree,
                            std::span<const std::string> prefix,
                            const std::string& label);

}  // namespace ceg
