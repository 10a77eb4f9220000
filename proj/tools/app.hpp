#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sintlab {

enum ExitCode { kOk = 0, kInternal = 1, kValidation = 2, kPrecision = 3 };

/// Runs the sintlab command line (arguments without the program name).
/// Reports go to `out` unless an output path is configured.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sintlab
