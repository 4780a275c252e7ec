#ifndef OADLC_CONFIG_HPP
#define OADLC_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oadlc/layout.hpp"
#include "oadlc/optimizer.hpp"
#include "oadlc/pattern.hpp"
#include "oadlc/types.hpp"

namespace oadlc {

/// Malformed or inconsistent configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LayerGeometry {
  double W = 0.0;      // m
  double alpha = 0.0;  // rad
  int n = 0;
};

/// Fully resolved configuration, SI internally. Key names in the file carry
/// their units (W_mm, E_GPa, ...).
struct DesignConfig {
  Material material;
  std::optional<LayerGeometry> layer1;
  std::optional<LayerGeometry> layer2;  // defaults to layer1
  Layout layout;
  double eta = 0.0;  // rad, used by analyze / validate / sweep

  bool has_constraints = false;
  DesignConstraints constraints;

  ModelOptions model;
  OptimizerSettings optimizer;
  GridResolution exhaustive_grid;

  std::string output_dir;
  double connector_allowance = 0.0;
  PatternOptions pattern;
  bool segments_csv = false;

  /// Both layers of the configured assembly. Throws ConfigError without one.
  Assembly assembly() const;
  DesignPoint design_point() const;
};

/// Grafix Dura-Lar film: E 2.7 GPa, nu 0.43, t 0.125 mm; density 1.39 g/cm^3
/// is the polyester-film default, not a measured value.
Material default_material();

/// Parses the JSON config text. Unknown keys are rejected.
DesignConfig parse_config(const std::string& text);
DesignConfig parse_config(const nlohmann::ordered_json& doc);

/// Reads a config file, applies `key.path=value` overrides, then parses.
DesignConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Applies one `a.b.c=value` override; value is JSON when it parses as JSON,
/// otherwise a string.
void apply_override(nlohmann::ordered_json& doc, const std::string& assignment);

/// The configuration with every default materialized, in file units.
nlohmann::ordered_json to_json(const DesignConfig& config);

}  // namespace oadlc

#endif  // OADLC_CONFIG_HPP
