#include "ceg/error.hpp"

namespace ceg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kMultipleParents: return "MultipleParents";
    case ErrorCode::kDuplicateSiblingLabel: return "DuplicateSiblingLabel";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kInvalidTheta: return "InvalidTheta";
    case ErrorCode::kIsLeaf: return "IsLeaf";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kLeafInStage: return "LeafInStage";
    case ErrorCode::kInvalidPartition: return "InvalidPartition";
    case ErrorCode::kZeroCountSituation: return "ZeroCountSituation";
    case ErrorCode::kPrefixMissing: return "PrefixMissing";
    case ErrorCode::kColourConflict: return "ColourConflict";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kPrefixNotFound: return "PrefixNotFound";
    case ErrorCode::kInconsistentTermination: return "InconsistentTermination";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace ceg
