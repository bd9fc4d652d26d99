#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ceg {

enum class ErrorCode {
  kCycleDetected,
  kMultipleRoots,
  kMultipleParents,
  kDuplicateSiblingLabel,
  kDisconnected,
  kEmptyTree,
  kInvalidTheta,
  kIsLeaf,
  kUnknownVertex,
  kLeafInStage,
  kInvalidPartition,
  kZeroCountSituation,
  kPrefixMissing,
  kColourConflict,
  kTooLarge,
  kEmptyTable,
  kUnknownColumn,
  kPrefixNotFound,
  kInconsistentTermination,
  kInvalidGraph,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception. `code()` is the
// stable part; `what()` carries human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ceg
