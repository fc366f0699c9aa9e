#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dioprime::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Parses argv and dispatches one subcommand. Reports go to `out` (or the
/// --output file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: argv[0] is supplied.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC 4180 field quoting: wraps in quotes when the field holds a comma,
/// quote, CR or LF, doubling inner quotes.
std::string csv_field(const std::string& s);

}  // namespace dioprime::cli
