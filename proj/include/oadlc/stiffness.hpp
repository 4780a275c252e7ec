#ifndef OADLC_STIFFNESS_HPP
#define OADLC_STIFFNESS_HPP

#include "oadlc/types.hpp"

namespace oadlc {

/// Equivalent membrane and bending moduli from the A/D plate matrices of a
/// unit cell of thickness `t`.
EquivalentModuli moduli_from_plate_matrices(const PlateMatrices& p, double t);

/// Closed-form equivalent moduli of a triangular unit cell.
EquivalentModuli triangular_moduli(const LayerSpec& layer);

/// Unit lengths the layer sums run over (n or n+1 entries, see UnitCount).
std::vector<double> unit_lengths(const LayerSpec& layer, UnitCount count);

/// K_C (units in series) and K_S (units in parallel), N/m.
LayerPair layer_inplane(const LayerSpec& layer, const EquivalentModuli& moduli,
                        const ModelOptions& options = {});
LayerPair layer_inplane(const LayerSpec& layer, const ModelOptions& options = {});

/// D_C (units in series) and D_S (units in parallel), N*m.
LayerPair layer_bending(const LayerSpec& layer, const EquivalentModuli& moduli,
                        const ModelOptions& options = {});
LayerPair layer_bending(const LayerSpec& layer, const ModelOptions& options = {});

/// Stiffness of the orthogonal stack along direction `eta` (rad).
/// Layer 1's spanwise spring pairs with layer 2's chordwise spring along eta = 0.
double combine_orthogonal(const LayerPair& layer1, const LayerPair& layer2, double eta);

double assembly_inplane(const Assembly& a, double eta, const ModelOptions& options = {});
double assembly_bending(const Assembly& a, double eta, const ModelOptions& options = {});

LayerStiffness layer_stiffness(const LayerSpec& layer, const ModelOptions& options = {});

/// Full in-plane stiffness pipeline: moduli, per-layer springs, orthogonal stack.
double pipeline_K(const Assembly& a, double eta, const ModelOptions& options = {});
/// Full out-of-plane stiffness pipeline.
double pipeline_D(const Assembly& a, double eta, const ModelOptions& options = {});

/// Folded chordwise length (n+1) W sin(alpha/2) and stack thickness 2 W cos(alpha/2).
FoldedDimensions folded_dimensions(const LayerSpec& layer);

/// Flat developed area of one layer: panels of width W whose heights follow
/// the crease lengths (end panels take their single neighbour).
double developed_area(const LayerSpec& layer);

/// (1 + connector_allowance) * sum over layers of rho * t * developed area, kg.
double mass(const Assembly& a, double connector_allowance = 0.0);

StiffnessReport analyze(const Assembly& a, double eta, double connector_allowance = 0.0,
                        const ModelOptions& options = {});

}  // namespace oadlc

#endif  // OADLC_STIFFNESS_HPP
