#pragma once

#include <iosfwd>

namespace vidrank::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIngest = 2,
  kPipeline = 3,
  kEvaluation = 4,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vidrank::cli
