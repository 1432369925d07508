#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmaxent::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBadArguments = 2,
  kDataError = 3,
  kDegenerate = 4,
};

/// Runs one pipeline stage. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmaxent::cli
