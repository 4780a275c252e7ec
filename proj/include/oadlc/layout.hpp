#ifndef OADLC_LAYOUT_HPP
#define OADLC_LAYOUT_HPP

#include <string>

#include "oadlc/types.hpp"

namespace oadlc {

/// Planform of the folded mechanism. Determines the crease length array.
struct Layout {
  enum class Kind { Square, Circular };
  Kind kind = Kind::Square;
  double radius = 0.0;  // m, circular only

  static Layout square() { return {}; }
  static Layout circular(double radius) { return {Kind::Circular, radius}; }

  bool operator==(const Layout&) const = default;
};

std::string to_string(Layout::Kind kind);

/// Chordwise coordinate of crease `j` (1-based) in the folded state, measured
/// from the layer centre.
double folded_crease_position(double W, double alpha, int n, int j);

/// Square layer: every crease as long as the folded chordwise extent.
LayerSpec square_layer(const Material& material, double W, double alpha, int n);

/// Circular layer: crease j spans the disk chord at its folded position,
/// 2 sqrt(R^2 - c_j^2). Throws DomainError if a crease falls outside the disk.
LayerSpec circular_layer(const Material& material, double W, double alpha, int n, double R);

LayerSpec make_layer(const Material& material, double W, double alpha, int n,
                     const Layout& layout);

/// Two identical layers, as used throughout the design flow.
Assembly identical_assembly(const LayerSpec& layer);

}  // namespace oadlc

#endif  // OADLC_LAYOUT_HPP
