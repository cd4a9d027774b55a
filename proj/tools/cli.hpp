#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lightbulb::cli {

/// Runs one command line (args excludes the program name). Data goes to out,
/// diagnostics to err; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lightbulb::cli
