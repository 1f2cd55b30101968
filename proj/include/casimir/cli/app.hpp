#pragma once

// casimir-ms command-line front end.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace casimir::cli {

inline constexpr const char* kToolName = "casimir-ms";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitConvergence = 3,
};

/// Runs one invocation. args excludes the program name. Results go to out
/// (or to --output), diagnostics and usage text to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses an angle such as "1.2", "90deg" or "0.5rad". A bare number is in
/// degrees when degrees is true and in radians otherwise.
double parse_angle(const std::string& text, bool degrees);

/// Parses a config file of key=value lines. Blank lines and lines starting
/// with '#' or ';' are skipped, surrounding quotes are removed, a
/// "<subcommand>." key prefix is dropped and empty values are skipped.
/// Throws DomainError on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text,
                                                              const std::string& subcommand);

} // namespace casimir::cli
