#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ckfractal::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 64,
    kData = 65,
    kCapExceeded = 66,
    kNoConvergence = 70,
};

/// Runs one command; `args` excludes the program name. Results go to `out`,
/// one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckfractal::cli
