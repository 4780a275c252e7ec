#ifndef OADLC_RECORDS_HPP
#define OADLC_RECORDS_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oadlc/config.hpp"
#include "oadlc/optimizer.hpp"
#include "oadlc/types.hpp"

// Machine-readable records in reporting units (mm, N/mm, mN*m, g, degrees).
namespace oadlc {

/// Every floating-point number rounded to 6 significant digits.
nlohmann::ordered_json rounded(const nlohmann::ordered_json& record);

/// Rounded, pretty-printed record with a trailing newline.
std::string dump_record(const nlohmann::ordered_json& record);

nlohmann::ordered_json feasibility_json(const FeasibilityReport& report);
std::string feasibility_table(const FeasibilityReport& report);

nlohmann::ordered_json analysis_record(const DesignConfig& config, const StiffnessReport& report);
nlohmann::ordered_json solution_record(const DesignConfig& config, const DesignSolution& solution,
                                       std::string_view method);
nlohmann::ordered_json validation_record(const DesignConfig& config, const DesignPoint& point,
                                         const FeasibilityReport& report);

enum class SweepParameter { W, n, alpha };

SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepRow {
  double value = 0.0;  // in config units (mm, count, degrees)
  double K_eta = 0.0;  // N/m
  double D_eta = 0.0;  // N*m
  double mass = 0.0;   // kg
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> errors;  // one message per skipped value
};

/// Varies one parameter of both layers around the configured assembly.
SweepResult run_sweep(const DesignConfig& config, SweepParameter vary,
                      const std::vector<double>& values);

std::string sweep_csv(SweepParameter vary, const SweepResult& result);

}  // namespace oadlc

#endif  // OADLC_RECORDS_HPP
