#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mars::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRunError = 1;     // bad input data, provider failure
inline constexpr int kConfigError = 2;  // bad flags or config file

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Writes `content` to a sibling temp file and renames it over `path`, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mars::cli
