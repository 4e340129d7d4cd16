#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace expunge::cli {

/// Exit codes of the command-line tool.
enum Exit : int { kVerified = 0, kNotFound = 1, kUsage = 2, kBudget = 3 };

/// Runs `expunge <subcommand> ...`; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "7", "3..6" or "3,5,9" into the listed integers.
std::vector<long long> parse_range(const std::string& text);

}  // namespace expunge::cli
