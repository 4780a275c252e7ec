#ifndef OADLC_OPTIMIZER_HPP
#define OADLC_OPTIMIZER_HPP

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oadlc/layout.hpp"
#include "oadlc/types.hpp"

namespace oadlc {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// Bounds of the minimum-weight design problem. Absent optionals impose nothing.
struct DesignConstraints {
  std::optional<double> fab_length;         // L_fab, m
  std::optional<double> folded_length_min;  // L_min, m
  std::optional<double> folded_length_max;  // L_max, m
  std::optional<double> thickness_min;      // t_min, m
  std::optional<double> thickness_max;      // t_max, m
  std::optional<double> K_min;              // N/m
  std::optional<double> D_min;              // N*m
  Interval W_bounds{1e-3, 50e-3};
  IntRange n_bounds{1, 200};
  Interval alpha_bounds{5.0 * std::numbers::pi / 180.0, 175.0 * std::numbers::pi / 180.0};
  double eta = 0.0;
  Layout layout;
};

/// A candidate geometry; both layers share it.
struct DesignPoint {
  double W = 0.0;
  double alpha = 0.0;
  int n = 0;

  bool operator==(const DesignPoint&) const = default;
};

/// Relative tolerance applied to every inequality.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct ConstraintCheck {
  std::string_view name;
  double value = 0.0;  // evaluated quantity (SI)
  double bound = 0.0;  // limit (SI)
  double slack = 0.0;  // signed; >= 0 when satisfied, NaN when not evaluable
  bool satisfied = false;

  /// Slack relative to the bound's magnitude; positive means violated.
  double normalized_violation() const;
};

struct FeasibilityReport {
  std::vector<ConstraintCheck> checks;
  bool feasible = true;
  double max_violation = 0.0;  // largest normalized violation, 0 if feasible

  const ConstraintCheck* most_violated() const;
};

/// Evaluates, in fixed order: layout, flat fabrication size, crease length,
/// folded length bounds, folded thickness bounds, K floor, D floor.
FeasibilityReport check_feasible(const DesignPoint& p, const Material& material,
                                 const DesignConstraints& c, const ModelOptions& model = {});

struct SearchStatistics {
  long long evaluations = 0;
  double wall_seconds = 0.0;  // informational only, never serialized
};

struct DesignSolution {
  DesignPoint point;
  double K_eta = 0.0;
  double D_eta = 0.0;
  double mass = 0.0;
  FoldedDimensions folded;
  FeasibilityReport feasibility;
  SearchStatistics stats;
};

struct OptimizerSettings {
  int seed_W = 64;
  int seed_alpha = 64;
  double polish_tolerance = 1e-10;
  int polish_iterations = 4000;
  int polish_restarts = 8;
  unsigned threads = 0;  // 0 picks hardware concurrency
  double connector_allowance = 0.0;
  ModelOptions model;
};

struct GridResolution {
  double W_step = 0.5e-3;  // m
  double alpha_step = std::numbers::pi / 180.0;  // rad
};

/// No feasible point exists in the search box.
class InfeasibleProblem : public std::runtime_error {
 public:
  InfeasibleProblem(const std::string& what, DesignPoint closest, std::string constraint,
                    double violation)
      : std::runtime_error(what),
        closest_(closest),
        constraint_(std::move(constraint)),
        violation_(violation) {}

  /// Point minimizing the largest normalized violation.
  const DesignPoint& closest() const { return closest_; }
  const std::string& constraint() const { return constraint_; }
  double violation() const { return violation_; }

 private:
  DesignPoint closest_;
  std::string constraint_;
  double violation_;
};

/// The problem statement itself is malformed (inverted or non-finite bounds).
class InvalidProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const DesignConstraints& c);

/// Rebuilds a full solution record for `p`.
DesignSolution evaluate_design(const DesignPoint& p, const Material& material,
                               const DesignConstraints& c, const OptimizerSettings& s = {});

/// Minimum-mass feasible design. Exact enumeration over n, seeded grid plus
/// simplex polish over (W, alpha). Ties break on (mass, n, W, alpha).
DesignSolution optimize(const Material& material, const DesignConstraints& c,
                        const OptimizerSettings& s = {});

/// Full enumeration of the discretized box with the same tie-break.
DesignSolution exhaustive_search(const Material& material, const DesignConstraints& c,
                                 const GridResolution& grid, const OptimizerSettings& s = {});

struct NaiveDesignRow {
  DesignPoint point;
  FeasibilityReport feasibility;
  double K_eta = 0.0;
  double D_eta = 0.0;
  double mass = 0.0;
};

/// Evaluates hand-picked designs; rows come back sorted by mass.
std::vector<NaiveDesignRow> naive_designs_report(const Material& material,
                                                 const DesignConstraints& c,
                                                 const std::vector<DesignPoint>& candidates,
                                                 const OptimizerSettings& s = {});

}  // namespace oadlc

#endif  // OADLC_OPTIMIZER_HPP
