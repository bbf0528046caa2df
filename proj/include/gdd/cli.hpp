#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gdd::cli {

enum ExitCode : int { kComputed = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line (args excludes the program name). JSON results and
/// domain errors go to `out`, usage messages to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdd::cli
