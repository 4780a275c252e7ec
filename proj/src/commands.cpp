#include "oadlc/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oadlc/format.hpp"
#include "oadlc/pattern.hpp"
#include "oadlc/stiffness.hpp"
#include "oadlc/units.hpp"

namespace oadlc::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
}

fs::path output_dir(const DesignConfig& config) {
  return config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
}

void write_kit(const DesignConfig& config, const AssemblyKit& kit,
               const nlohmann::ordered_json& design_record) {
  const fs::path dir = output_dir(config);
  int index = 1;
  for (const FoldPattern* layer : {&kit.layer1, &kit.layer2}) {
    FoldPattern copy = *layer;
    copy.metadata["design"] = rounded(design_record);
    const std::string stem = "layer" + std::to_string(index++);
    write_file(dir / (stem + ".svg"), write_svg(copy));
    if (config.segments_csv) write_file(dir / (stem + "_segments.csv"), write_segments_csv(copy));
  }
}

}  // namespace

int cmd_analyze(const DesignConfig& config, std::ostream& out) {
  const StiffnessReport report =
      analyze(config.assembly(), config.eta, config.connector_allowance, config.model);
  const std::string text = dump_record(analysis_record(config, report));
  out << text;
  if (!config.output_dir.empty()) write_file(output_dir(config) / "analysis.json", text);
  return kExitOk;
}

int cmd_optimize(const DesignConfig& config, bool exhaustive, bool emit_pattern, std::ostream& out) {
  if (!config.has_constraints) throw ConfigError("config key 'constraints': missing");
  const DesignSolution solution =
      exhaustive ? exhaustive_search(config.material, config.constraints, config.exhaustive_grid,
                                     config.optimizer)
                 : optimize(config.material, config.constraints, config.optimizer);
  const auto record = solution_record(config, solution, exhaustive ? "exhaustive" : "optimize");
  const std::string text = dump_record(record);
  out << text;
  if (!config.output_dir.empty() || emit_pattern)
    write_file(output_dir(config) / "solution.json", text);
  if (emit_pattern) {
    const AssemblyKit kit =
        generate_assembly_kit(solution, config.material, config.constraints.layout, config.pattern);
    write_kit(config, kit, record);
  }
  return kExitOk;
}

int cmd_sweep(const DesignConfig& config, SweepParameter vary, const std::vector<double>& values,
              std::ostream& out, std::ostream& err) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  const SweepResult result = run_sweep(config, vary, values);
  for (const auto& e : result.errors) err << "skipped " << e << "\n";
  const std::string csv = sweep_csv(vary, result);
  out << csv;
  if (!config.output_dir.empty()) write_file(output_dir(config) / "sweep.csv", csv);
  return kExitOk;
}

int cmd_pattern(const DesignConfig& config, std::ostream& out) {
  const AssemblyKit kit = generate_assembly_kit(config.assembly(), config.pattern);
  nlohmann::ordered_json record = {{"record", "pattern"},
                                   {"assembly", kit.notes},
                                   {"files", {"layer1.svg", "layer2.svg"}},
                                   {"config", to_json(config)}};
  write_kit(config, kit, record);
  out << dump_record(record);
  return kExitOk;
}

int cmd_validate(const DesignConfig& config, std::ostream& out) {
  const DesignPoint point = config.design_point();
  const FeasibilityReport report =
      check_feasible(point, config.material, config.constraints, config.model);
  out << feasibility_table(report);
  if (!config.output_dir.empty())
    write_file(output_dir(config) / "validation.json",
               dump_record(validation_record(config, point, report)));
  return report.feasible ? kExitOk : kExitInfeasible;
}

int exit_code_for(const std::exception_ptr& error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidProblem& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleProblem& e) {
    err << "infeasible: " << e.what() << " (normalized violation " << fmt::sig(e.violation())
        << " at W=" << fmt::sig(units::m_to_mm(e.closest().W)) << " mm, n=" << e.closest().n
        << ", alpha=" << fmt::sig(units::rad_to_deg(e.closest().alpha)) << " deg)\n";
    return kExitInfeasible;
  } catch (const FabricationLimitExceeded& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("empty entry in value list '" + text + "'");
    try {
      values.push_back(fmt::parse_double(item.substr(first, last - first + 1)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return values;
}

}  // namespace oadlc::cli
