#include "oadlc/layout.hpp"

#include <cmath>

namespace oadlc {

std::string to_string(Layout::Kind kind) {
  return kind == Layout::Kind::Square ? "square" : "circular";
}

double folded_crease_position(double W, double alpha, int n, int j) {
  return (j - 0.5 * (n + 1)) * W * std::sin(alpha / 2.0);
}

LayerSpec square_layer(const Material& material, double W, double alpha, int n) {
  LayerSpec layer{.material = material,
                  .panel_width = W,
                  .fold_angle = alpha,
                  .crease_count = n,
                  .crease_lengths = {}};
  if (n >= 1) layer.crease_lengths.assign(n, (n + 1) * W * std::sin(alpha / 2.0));
  validate(layer);
  return layer;
}

LayerSpec circular_layer(const Material& material, double W, double alpha, int n, double R) {
  if (!(std::isfinite(R) && R > 0.0)) throw DomainError("circular layout radius must be > 0");
  LayerSpec layer{.material = material,
                  .panel_width = W,
                  .fold_angle = alpha,
                  .crease_count = n,
                  .crease_lengths = {}};
  for (int j = 1; j <= n; ++j) {
    const double c = folded_crease_position(W, alpha, n, j);
    const double h2 = R * R - c * c;
    if (!(h2 > 0.0)) throw DomainError("crease " + std::to_string(j) + " lies outside the disk");
    layer.crease_lengths.push_back(2.0 * std::sqrt(h2));
  }
  validate(layer);
  return layer;
}

LayerSpec make_layer(const Material& material, double W, double alpha, int n,
                     const Layout& layout) {
  if (layout.kind == Layout::Kind::Circular)
    return circular_layer(material, W, alpha, n, layout.radius);
  return square_layer(material, W, alpha, n);
}

Assembly identical_assembly(const LayerSpec& layer) { return {layer, layer}; }

}  // namespace oadlc
