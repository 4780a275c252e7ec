#ifndef OADLC_TYPES_HPP
#define OADLC_TYPES_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace oadlc {

// All quantities are SI (m, Pa, kg/m^3, rad) unless a name says otherwise.
// Conversion to and from the reporting units lives in units.hpp.

/// Raised when an input leaves the domain where the closed-form models are defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Isotropic constitutive sheet material.
struct Material {
  double youngs_modulus = 0.0;  // Pa
  double poisson_ratio = 0.0;
  double thickness = 0.0;  // m
  double density = 0.0;    // kg/m^3
};

/// One corrugated layer with a triangular unit cell.
///
/// `crease_lengths` carries one entry per crease; a square layer has them all
/// equal, a circular layer follows the disk chords. Every stiffness routine
/// consumes the explicit array, so layouts never need special cases downstream.
struct LayerSpec {
  Material material;
  double panel_width = 0.0;  // W, m
  double fold_angle = 0.0;   // alpha, rad; pi is the flat sheet
  int crease_count = 0;      // n
  std::vector<double> crease_lengths;  // L_1..L_n, m
};

struct EquivalentModuli {
  double E_cx = 0.0;
  double E_cy = 0.0;
  double E_bx = 0.0;
  double E_by = 0.0;
};

/// Upper-left 2x2 blocks plus shear entries of the A and D plate matrices.
struct PlateMatrices {
  double A11 = 0.0, A12 = 0.0, A22 = 0.0, A66 = 0.0;  // N/m
  double D11 = 0.0, D12 = 0.0, D22 = 0.0, D66 = 0.0;  // N*m
};

/// Two layers stacked with layer 2's creases orthogonal to layer 1's.
struct Assembly {
  LayerSpec layer1;
  LayerSpec layer2;
};

/// Chordwise (series) and spanwise (parallel) stiffness of one layer.
struct LayerPair {
  double chordwise = 0.0;
  double spanwise = 0.0;
};

struct LayerStiffness {
  EquivalentModuli moduli;
  LayerPair inplane;  // K_C, K_S in N/m
  LayerPair bending;  // D_C, D_S in N*m
};

struct FoldedDimensions {
  double length = 0.0;     // chordwise extent of a folded layer, m
  double thickness = 0.0;  // double-layer stack height, m
};

struct StiffnessReport {
  LayerStiffness layer1;
  LayerStiffness layer2;
  double eta = 0.0;    // rad
  double K_eta = 0.0;  // N/m
  double D_eta = 0.0;  // N*m
  double mass = 0.0;   // kg
  FoldedDimensions folded1;
  FoldedDimensions folded2;
};

/// How many springs the layer sums run over.
///
/// `Creases` sums exactly n terms, one per crease length. `Panels` treats each
/// of the n+1 panels as a unit, giving panel k the mean of its bounding crease
/// lengths (end panels take their single neighbour).
enum class UnitCount { Creases, Panels };

struct ModelOptions {
  UnitCount unit_count = UnitCount::Creases;
};

/// Smallest fold angle accepted by the models, rad.
inline constexpr double kMinFoldAngle = 1e-9;

void validate(const Material& m);
void validate(const LayerSpec& layer);

}  // namespace oadlc

#endif  // OADLC_TYPES_HPP
