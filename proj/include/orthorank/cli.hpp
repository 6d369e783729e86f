#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orthorank::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInputError = 2, kSearchExhausted = 3 };

/// Runs one command line (args excludes the program name). The JSON payload
/// goes to `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthorank::cli
