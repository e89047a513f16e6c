#pragma once

#include <iosfwd>

#include "cli/settings.hpp"

namespace renyimono::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Worker count for sweeps and roof checks: RENYIMONO_WORKERS if set and
// positive, otherwise the hardware concurrency.
std::size_t worker_count_from_env();

int cmd_demo(std::ostream& out);
int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err);
int cmd_sweep(const Settings& s, std::ostream& out, std::ostream& err);
int cmd_compare(const Settings& s, std::ostream& out, std::ostream& err);
int cmd_roof_check(const Settings& s, std::ostream& out, std::ostream& err);

// Parses argv (subcommand + flags, optional --config) and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace renyimono::cli
