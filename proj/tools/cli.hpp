#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ceg::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // roundtrip verdict "no", or bench rows that disagree
  kBadInput = 2,
  kInvalidPartition = 3,
  kBrokenCeg = 4,
};

// Entry point behind the `ceg` binary; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ceg::cli
