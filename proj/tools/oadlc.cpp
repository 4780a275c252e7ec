#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oadlc/commands.hpp"
#include "oadlc/config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON design configuration")->required();
  cmd->add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
  cmd->add_option("--set", opts.overrides, "override a config value, e.g. assembly.W_mm=10");
}

oadlc::DesignConfig resolve(const CommonOptions& opts) {
  std::vector<std::string> overrides = opts.overrides;
  if (!opts.out_dir.empty()) overrides.push_back("output.dir=\"" + opts.out_dir + "\"");
  return oadlc::load_config(opts.config_path, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = oadlc::cli;
  CLI::App app{"Design tool for orthogonally assembled double-layered corrugated mechanisms"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool emit_pattern = false;
  bool exhaustive = false;
  std::string vary;
  std::string values;

  auto* analyze = app.add_subcommand("analyze", "stiffness, mass and folded size of an assembly");
  add_common(analyze, opts);

  auto* optimize = app.add_subcommand("optimize", "minimum-mass design under the constraints");
  add_common(optimize, opts);
  optimize->add_flag("--emit-pattern", emit_pattern, "also write the assembly kit SVGs");
  optimize->add_flag("--exhaustive", exhaustive, "enumerate the discretized box instead");

  auto* sweep = app.add_subcommand("sweep", "vary one parameter and tabulate the model");
  add_common(sweep, opts);
  sweep->add_option("--vary", vary, "W, n or alpha")->required();
  sweep->add_option("--values", values, "comma-separated values (mm, count or degrees)")->required();

  auto* pattern = app.add_subcommand("pattern", "write fold patterns for the configured assembly");
  add_common(pattern, opts);

  auto* validate = app.add_subcommand("validate", "per-constraint slack of the configured design");
  add_common(validate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    const oadlc::DesignConfig config = resolve(opts);
    if (*analyze) return cli::cmd_analyze(config, std::cout);
    if (*optimize) return cli::cmd_optimize(config, exhaustive, emit_pattern, std::cout);
    if (*sweep)
      return cli::cmd_sweep(config, oadlc::parse_sweep_parameter(vary),
                            cli::parse_value_list(values), std::cout, std::cerr);
    if (*pattern) return cli::cmd_pattern(config, std::cout);
    if (*validate) return cli::cmd_validate(config, std::cout);
  } catch (...) {
    return cli::exit_code_for(std::current_exception(), std::cerr);
  }
  return cli::kExitUsage;
}
