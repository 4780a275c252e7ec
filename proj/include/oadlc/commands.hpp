#ifndef OADLC_COMMANDS_HPP
#define OADLC_COMMANDS_HPP

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "oadlc/config.hpp"
#include "oadlc/records.hpp"

// Subcommand bodies behind the `oadlc` executable. Each writes its primary
// output to `out`, files into config.output_dir, and returns the exit code.
namespace oadlc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // parse or validation error
inline constexpr int kExitInfeasible = 3;  // no feasible design
inline constexpr int kExitDomain = 4;      // numeric domain error

int cmd_analyze(const DesignConfig& config, std::ostream& out);
int cmd_optimize(const DesignConfig& config, bool exhaustive, bool emit_pattern, std::ostream& out);
int cmd_sweep(const DesignConfig& config, SweepParameter vary, const std::vector<double>& values,
              std::ostream& out, std::ostream& err);
int cmd_pattern(const DesignConfig& config, std::ostream& out);
int cmd_validate(const DesignConfig& config, std::ostream& out);

/// Maps an exception escaping a command to its exit code, reporting it on `err`.
int exit_code_for(const std::exception_ptr& error, std::ostream& err);

/// Parses a comma-separated list of numbers ("8,10,12").
std::vector<double> parse_value_list(const std::string& text);

}  // namespace oadlc::cli

#endif  // OADLC_COMMANDS_HPP
