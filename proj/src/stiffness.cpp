#include "oadlc/stiffness.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace oadlc {

namespace {

[[noreturn]] void domain_fail(const std::string& what) { throw DomainError(what); }

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const Material& m) {
  if (!finite_positive(m.youngs_modulus)) domain_fail("Young's modulus must be > 0");
  if (!(m.poisson_ratio >= 0.0 && m.poisson_ratio < 0.5))
    domain_fail("Poisson ratio must lie in [0, 0.5)");
  if (!finite_positive(m.thickness)) domain_fail("sheet thickness must be > 0");
  if (!(std::isfinite(m.density) && m.density >= 0.0)) domain_fail("density must be >= 0");
}

void validate(const LayerSpec& layer) {
  validate(layer.material);
  if (!finite_positive(layer.panel_width)) domain_fail("panel width must be > 0");
  // pi itself is admitted: it is the flat-sheet limit and every formula stays finite there.
  if (!(layer.fold_angle >= kMinFoldAngle && layer.fold_angle <= std::numbers::pi))
    domain_fail("fold angle must lie in (0, 180] degrees");
  if (layer.crease_count < 1) domain_fail("crease count must be >= 1");
  if (layer.crease_lengths.size() != static_cast<std::size_t>(layer.crease_count))
    domain_fail("crease length array must hold exactly n entries");
  for (double L : layer.crease_lengths)
    if (!finite_positive(L)) domain_fail("every crease length must be > 0");
}

EquivalentModuli moduli_from_plate_matrices(const PlateMatrices& p, double t) {
  if (!finite_positive(t)) domain_fail("plate thickness must be > 0");
  const double detA = p.A11 * p.A22 - p.A12 * p.A12;
  const double detD = p.D11 * p.D22 - p.D12 * p.D12;
  if (!(p.A11 > 0.0 && detA > 0.0)) domain_fail("A block is not positive definite");
  if (!(p.D11 > 0.0 && detD > 0.0)) domain_fail("D block is not positive definite");

  const double t3 = t * t * t;
  return {
      .E_cx = detA / (t * p.A22),
      .E_cy = detA / (t * p.A11),
      .E_bx = 12.0 * detD / (t3 * p.D22),
      .E_by = 12.0 * detD / (t3 * p.D11),
  };
}

EquivalentModuli triangular_moduli(const LayerSpec& layer) {
  validate(layer);
  const double E = layer.material.youngs_modulus;
  const double nu = layer.material.poisson_ratio;
  const double t = layer.material.thickness;
  const double W = layer.panel_width;
  const double alpha = layer.fold_angle;
  if (nu >= 1.0) domain_fail("Poisson ratio must be < 1");

  const double s = std::sin(alpha / 2.0);
  const double c = std::cos(alpha / 2.0);
  const double nu2 = nu * nu;
  const double nu3 = nu2 * nu;
  const double nu4 = nu2 * nu2;
  const double t2 = t * t;
  const double W2 = W * W;

  EquivalentModuli m;
  m.E_cx = E * (t2 * (nu2 - 2.0 * nu - 1.0) * s) /
           ((3.0 * nu4 + 2.0 * nu3 - nu - 3.0) * t2 * (s * s) +
            (-nu4 + 2.0 * nu3 + 4.0 * nu2 - 2.0 * nu - 3.0) * W2 * c);
  m.E_cy = E * (nu2 - 2.0 * nu - 3.0) / (4.0 * (nu2 - 1.0) * s);
  // cos(alpha) + 1 written as 2c^2; the literal form cancels near the flat limit
  m.E_bx = E * (W2 * (2.0 * c * c) * s + t2 * (1.0 - nu2) * (s * s)) /
           (2.0 * (1.0 - nu2) * (W2 * (c * c) + t2 * (s * s)));
  m.E_by = E * (s + W2 * (c * c) / (t2 * (1.0 - nu2) * s));
  return m;
}

std::vector<double> unit_lengths(const LayerSpec& layer, UnitCount count) {
  const auto& L = layer.crease_lengths;
  if (count == UnitCount::Creases || L.empty()) return L;
  std::vector<double> panels;
  panels.reserve(L.size() + 1);
  panels.push_back(L.front());
  for (std::size_t k = 1; k < L.size(); ++k) panels.push_back(0.5 * (L[k - 1] + L[k]));
  panels.push_back(L.back());
  return panels;
}

LayerPair layer_inplane(const LayerSpec& layer, const EquivalentModuli& moduli,
                        const ModelOptions& options) {
  const double t = layer.material.thickness;
  const double ws = layer.panel_width * std::sin(layer.fold_angle / 2.0);
  double compliance = 0.0;
  double spanwise = 0.0;
  for (double L : unit_lengths(layer, options.unit_count)) {
    compliance += ws / (moduli.E_cx * L * t);
    spanwise += moduli.E_cy * ws * t / L;
  }
  return {.chordwise = 1.0 / compliance, .spanwise = spanwise};
}

LayerPair layer_inplane(const LayerSpec& layer, const ModelOptions& options) {
  return layer_inplane(layer, triangular_moduli(layer), options);
}

LayerPair layer_bending(const LayerSpec& layer, const EquivalentModuli& moduli,
                        const ModelOptions& options) {
  const double t = layer.material.thickness;
  const double t3 = t * t * t;
  const double ws = layer.panel_width * std::sin(layer.fold_angle / 2.0);
  double compliance = 0.0;
  double spanwise = 0.0;
  for (double L : unit_lengths(layer, options.unit_count)) {
    compliance += 12.0 * ws / (moduli.E_bx * L * t3);
    spanwise += moduli.E_by * t3 * ws / (12.0 * L);
  }
  return {.chordwise = 1.0 / compliance, .spanwise = spanwise};
}

LayerPair layer_bending(const LayerSpec& layer, const ModelOptions& options) {
  return layer_bending(layer, triangular_moduli(layer), options);
}

double combine_orthogonal(const LayerPair& layer1, const LayerPair& layer2, double eta) {
  const double along = layer1.spanwise + layer2.chordwise;   // cos^2 coefficient
  const double across = layer2.spanwise + layer1.chordwise;  // sin^2 coefficient
  const double reduced = std::remainder(eta, std::numbers::pi);
  const double c = std::cos(reduced);
  const double s = std::sin(reduced);
  const double c2 = c * c;
  const double s2 = s * s;
  // Blend from the dominant end so equal coefficients return exactly and the
  // axis directions reproduce their coefficient bit for bit.
  if (c2 >= s2) return along + (across - along) * s2;
  return across + (along - across) * c2;
}

LayerStiffness layer_stiffness(const LayerSpec& layer, const ModelOptions& options) {
  LayerStiffness out;
  out.moduli = triangular_moduli(layer);
  out.inplane = layer_inplane(layer, out.moduli, options);
  out.bending = layer_bending(layer, out.moduli, options);
  return out;
}

double assembly_inplane(const Assembly& a, double eta, const ModelOptions& options) {
  return combine_orthogonal(layer_inplane(a.layer1, options), layer_inplane(a.layer2, options),
                            eta);
}

double assembly_bending(const Assembly& a, double eta, const ModelOptions& options) {
  return combine_orthogonal(layer_bending(a.layer1, options), layer_bending(a.layer2, options),
                            eta);
}

double pipeline_K(const Assembly& a, double eta, const ModelOptions& options) {
  const EquivalentModuli m1 = triangular_moduli(a.layer1);
  const EquivalentModuli m2 = triangular_moduli(a.layer2);
  return combine_orthogonal(layer_inplane(a.layer1, m1, options),
                            layer_inplane(a.layer2, m2, options), eta);
}

double pipeline_D(const Assembly& a, double eta, const ModelOptions& options) {
  const EquivalentModuli m1 = triangular_moduli(a.layer1);
  const EquivalentModuli m2 = triangular_moduli(a.layer2);
  return combine_orthogonal(layer_bending(a.layer1, m1, options),
                            layer_bending(a.layer2, m2, options), eta);
}

FoldedDimensions folded_dimensions(const LayerSpec& layer) {
  validate(layer);
  const double W = layer.panel_width;
  const double half = layer.fold_angle / 2.0;
  return {.length = (layer.crease_count + 1) * W * std::sin(half),
          .thickness = 2.0 * W * std::cos(half)};
}

double developed_area(const LayerSpec& layer) {
  double heights = 0.0;
  for (double h : unit_lengths(layer, UnitCount::Panels)) heights += h;
  return layer.panel_width * heights;
}

double mass(const Assembly& a, double connector_allowance) {
  validate(a.layer1);
  validate(a.layer2);
  if (!(std::isfinite(connector_allowance) && connector_allowance >= 0.0))
    domain_fail("connector allowance must be >= 0");
  auto sheet = [](const LayerSpec& l) {
    return l.material.density * l.material.thickness * developed_area(l);
  };
  return (1.0 + connector_allowance) * (sheet(a.layer1) + sheet(a.layer2));
}

StiffnessReport analyze(const Assembly& a, double eta, double connector_allowance,
                        const ModelOptions& options) {
  StiffnessReport r;
  r.layer1 = layer_stiffness(a.layer1, options);
  r.layer2 = layer_stiffness(a.layer2, options);
  r.eta = eta;
  r.K_eta = combine_orthogonal(r.layer1.inplane, r.layer2.inplane, eta);
  r.D_eta = combine_orthogonal(r.layer1.bending, r.layer2.bending, eta);
  r.mass = mass(a, connector_allowance);
  r.folded1 = folded_dimensions(a.layer1);
  r.folded2 = folded_dimensions(a.layer2);
  return r;
}

}  // namespace oadlc
