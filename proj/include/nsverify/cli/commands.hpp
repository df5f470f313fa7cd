/// @file commands.hpp
/// @brief The ns-verify commands. Each returns the process exit code.
///
/// Exit codes: 0 success; 1 invalid input; 2 a tolerance failure; 3 a
/// measurement contradicts a claim the harness only audits.
#pragma once

#include <ostream>

#include "nsverify/cli/config.hpp"

namespace nsv::cli {

int cmd_list(std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_sample(const RunConfig& config, std::ostream& out);
int cmd_evolve(const RunConfig& config, std::ostream& out);
int cmd_convergence(const RunConfig& config, std::ostream& out);

/// Parses argv and dispatches; errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsv::cli
