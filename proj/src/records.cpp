#include "oadlc/records.hpp"

#include <cmath>
#include <sstream>

#include "oadlc/format.hpp"
#include "oadlc/layout.hpp"
#include "oadlc/stiffness.hpp"
#include "oadlc/units.hpp"

namespace oadlc {

using json = nlohmann::ordered_json;

namespace {

// Reporting unit and SI-to-unit factor for each constraint name.
std::pair<const char*, double> constraint_unit(std::string_view name) {
  if (name == "K_min") return {"N/mm", 1e-3};
  if (name == "D_min") return {"mN*m", 1e3};
  return {"mm", 1e3};
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json layer_json(const LayerStiffness& l, const FoldedDimensions& folded) {
  return {
      {"E_cx_GPa", units::pa_to_gpa(l.moduli.E_cx)},
      {"E_cy_GPa", units::pa_to_gpa(l.moduli.E_cy)},
      {"E_bx_GPa", units::pa_to_gpa(l.moduli.E_bx)},
      {"E_by_GPa", units::pa_to_gpa(l.moduli.E_by)},
      {"K_C_N_per_mm", units::n_per_m_to_n_per_mm(l.inplane.chordwise)},
      {"K_S_N_per_mm", units::n_per_m_to_n_per_mm(l.inplane.spanwise)},
      {"D_C_mNm", units::nm_to_mnm(l.bending.chordwise)},
      {"D_S_mNm", units::nm_to_mnm(l.bending.spanwise)},
      {"folded_length_mm", units::m_to_mm(folded.length)},
      {"folded_thickness_mm", units::m_to_mm(folded.thickness)},
  };
}

json design_json(const DesignPoint& p) {
  return {{"W_mm", units::m_to_mm(p.W)}, {"n", p.n}, {"alpha_deg", units::rad_to_deg(p.alpha)}};
}

}  // namespace

json rounded(const json& record) {
  if (record.is_number_float()) return fmt::round_sig(record.get<double>(), 6);
  if (record.is_object()) {
    json out = json::object();
    for (const auto& item : record.items()) out[item.key()] = rounded(item.value());
    return out;
  }
  if (record.is_array()) {
    json out = json::array();
    for (const auto& v : record) out.push_back(rounded(v));
    return out;
  }
  return record;
}

std::string dump_record(const json& record) { return rounded(record).dump(2) + "\n"; }

json feasibility_json(const FeasibilityReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    const auto [unit, scale] = constraint_unit(c.name);
    checks.push_back({{"constraint", std::string(c.name)},
                      {"unit", unit},
                      {"value", nullable(c.value * scale)},
                      {"bound", nullable(c.bound * scale)},
                      {"slack", nullable(c.slack * scale)},
                      {"satisfied", c.satisfied}});
  }
  return {{"feasible", report.feasible}, {"max_violation", report.max_violation}, {"checks", checks}};
}

std::string feasibility_table(const FeasibilityReport& report) {
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  out << pad("constraint", 20) << pad("value", 14) << pad("bound", 14) << pad("slack", 14)
      << pad("unit", 7) << "status\n";
  for (const auto& c : report.checks) {
    const auto [unit, scale] = constraint_unit(c.name);
    out << pad(std::string(c.name), 20) << pad(fmt::sig(c.value * scale), 14)
        << pad(fmt::sig(c.bound * scale), 14) << pad(fmt::sig(c.slack * scale), 14)
        << pad(unit, 7) << (c.satisfied ? "ok" : "VIOLATED") << "\n";
  }
  out << "verdict: " << (report.feasible ? "feasible" : "infeasible") << "\n";
  return out.str();
}

json analysis_record(const DesignConfig& config, const StiffnessReport& r) {
  return {
      {"record", "analysis"},
      {"eta_deg", units::rad_to_deg(r.eta)},
      {"K_eta_N_per_mm", units::n_per_m_to_n_per_mm(r.K_eta)},
      {"D_eta_mNm", units::nm_to_mnm(r.D_eta)},
      {"mass_g", units::kg_to_g(r.mass)},
      {"layer1", layer_json(r.layer1, r.folded1)},
      {"layer2", layer_json(r.layer2, r.folded2)},
      {"config", to_json(config)},
  };
}

json solution_record(const DesignConfig& config, const DesignSolution& s, std::string_view method) {
  return {
      {"record", "solution"},
      {"method", std::string(method)},
      {"design", design_json(s.point)},
      {"K_eta_N_per_mm", nullable(units::n_per_m_to_n_per_mm(s.K_eta))},
      {"D_eta_mNm", nullable(units::nm_to_mnm(s.D_eta))},
      {"mass_g", nullable(units::kg_to_g(s.mass))},
      {"flat_width_mm", units::m_to_mm((s.point.n + 1) * s.point.W)},
      {"folded_length_mm", units::m_to_mm(s.folded.length)},
      {"folded_thickness_mm", units::m_to_mm(s.folded.thickness)},
      {"feasibility", feasibility_json(s.feasibility)},
      {"search", {{"evaluations", s.stats.evaluations}}},
      {"config", to_json(config)},
  };
}

json validation_record(const DesignConfig& config, const DesignPoint& point,
                       const FeasibilityReport& report) {
  return {
      {"record", "validation"},
      {"design", design_json(point)},
      {"feasibility", feasibility_json(report)},
      {"config", to_json(config)},
  };
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "W") return SweepParameter::W;
  if (name == "n") return SweepParameter::n;
  if (name == "alpha") return SweepParameter::alpha;
  throw ConfigError("sweep parameter must be one of W, n, alpha (got '" + name + "')");
}

SweepResult run_sweep(const DesignConfig& config, SweepParameter vary,
                      const std::vector<double>& values) {
  if (!config.layer1) throw ConfigError("config key 'assembly': missing");
  SweepResult result;
  for (double v : values) {
    auto apply = [&](LayerGeometry g) {
      switch (vary) {
        case SweepParameter::W:
          g.W = units::mm_to_m(v);
          break;
        case SweepParameter::n:
          if (v != std::floor(v)) throw DomainError("n must be an integer");
          g.n = static_cast<int>(v);
          break;
        case SweepParameter::alpha:
          g.alpha = units::deg_to_rad(v);
          break;
      }
      return g;
    };
    try {
      const LayerGeometry g1 = apply(*config.layer1);
      const LayerGeometry g2 = apply(config.layer2 ? *config.layer2 : *config.layer1);
      const Assembly a{make_layer(config.material, g1.W, g1.alpha, g1.n, config.layout),
                       make_layer(config.material, g2.W, g2.alpha, g2.n, config.layout)};
      const StiffnessReport r = analyze(a, config.eta, config.connector_allowance, config.model);
      result.rows.push_back({v, r.K_eta, r.D_eta, r.mass});
    } catch (const DomainError& e) {
      result.errors.push_back("value " + fmt::sig(v) + ": " + e.what());
    }
  }
  return result;
}

std::string sweep_csv(SweepParameter vary, const SweepResult& result) {
  std::ostringstream out;
  const char* column = vary == SweepParameter::W ? "W_mm" : vary == SweepParameter::n ? "n" : "alpha_deg";
  out << column << ",K_eta_N_per_mm,D_eta_mNm,mass_g\n";
  for (const auto& row : result.rows)
    out << fmt::sig(row.value) << ',' << fmt::sig(units::n_per_m_to_n_per_mm(row.K_eta)) << ','
        << fmt::sig(units::nm_to_mnm(row.D_eta)) << ',' << fmt::sig(units::kg_to_g(row.mass)) << '\n';
  return out.str();
}

}  // namespace oadlc
