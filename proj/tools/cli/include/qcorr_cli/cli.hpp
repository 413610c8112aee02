#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace qcorr::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kNumericalFailure = 3 };

/// Runs the qcorr command line. args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace qcorr::cli
