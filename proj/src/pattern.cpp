#include "oadlc/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oadlc/stiffness.hpp"
#include "oadlc/units.hpp"

namespace oadlc {

namespace {

using units::m_to_mm;

Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
bool same(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Outward normal of edge p->q on a counter-clockwise polygon.
Point2 outward_normal(Point2 p, Point2 q) {
  const Point2 d = q - p;
  const double len = std::hypot(d.x, d.y);
  return {d.y / len, -d.x / len};
}

void extend(FoldPattern::Box& box, Point2 p) {
  box.min_x = std::min(box.min_x, p.x);
  box.min_y = std::min(box.min_y, p.y);
  box.max_x = std::max(box.max_x, p.x);
  box.max_y = std::max(box.max_y, p.y);
}

FoldPattern::Box empty_box() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf, -inf, -inf};
}

// Appends edge p->q to the outline, with a tab when requested.
void append_edge(FoldPattern& pat, Point2 p, Point2 q, const TabSpec& tabs) {
  pat.outline.push_back(p);
  if (!tabs.enabled) return;
  const Point2 d = q - p;
  if (std::hypot(d.x, d.y) == 0.0) return;
  const Point2 a = p + tabs.inset_fraction * d;
  const Point2 b = q - tabs.inset_fraction * d;
  const Point2 off = tabs.depth_mm * outward_normal(p, q);
  const Point2 oa = a + off;
  const Point2 ob = b + off;
  pat.outline.insert(pat.outline.end(), {a, oa, ob, b});
  pat.tabs.push_back({.polygon = {a, b, ob, oa}, .fold = {a, b}});
}

void drop_repeats(std::vector<Point2>& poly) {
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const Point2& p : poly)
    if (out.empty() || !same(out.back(), p)) out.push_back(p);
  while (out.size() > 1 && same(out.front(), out.back())) out.pop_back();
  poly = std::move(out);
}

// Removes vertices lying on the straight segment between their neighbours.
void drop_collinear(std::vector<Point2>& poly) {
  bool changed = true;
  while (changed && poly.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const std::size_t n = poly.size();
      const Point2 prev = poly[(i + n - 1) % n];
      const Point2 cur = poly[i];
      const Point2 next = poly[(i + 1) % n];
      const Point2 d1 = cur - prev, d2 = next - cur;
      if (cross(d1, d2) == 0.0 && d1.x * d2.x + d1.y * d2.y > 0.0) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
}

// Mitred outward offset of a counter-clockwise polygon.
std::vector<Point2> offset_outward(const std::vector<Point2>& poly, double distance) {
  const std::size_t n = poly.size();
  std::vector<Point2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = poly[(i + n - 1) % n];
    const Point2 cur = poly[i];
    const Point2 next = poly[(i + 1) % n];
    const Point2 n1 = outward_normal(prev, cur);
    const Point2 n2 = outward_normal(cur, next);
    const double denom = 1.0 + n1.x * n2.x + n1.y * n2.y;
    out[i] = cur + (distance / denom) * (n1 + n2);
  }
  return out;
}

bool segments_cross(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  if (d1 == 0 && on_segment(p1, p2, q1)) return true;
  if (d2 == 0 && on_segment(p1, p2, q2)) return true;
  if (d3 == 0 && on_segment(q1, q2, p1)) return true;
  if (d4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = len2 > 0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 c = a + t * d;
  return std::hypot(p.x - c.x, p.y - c.y);
}

nlohmann::ordered_json layer_metadata(const LayerSpec& layer, const PatternOptions& options) {
  const FoldedDimensions folded = folded_dimensions(layer);
  nlohmann::ordered_json lengths = nlohmann::ordered_json::array();
  for (double L : layer.crease_lengths) lengths.push_back(m_to_mm(L));
  return {
      {"W_mm", m_to_mm(layer.panel_width)},
      {"n", layer.crease_count},
      {"alpha_deg", units::rad_to_deg(layer.fold_angle)},
      {"crease_lengths_mm", lengths},
      {"flat_width_mm", m_to_mm((layer.crease_count + 1) * layer.panel_width)},
      {"folded_length_mm", m_to_mm(folded.length)},
      {"folded_thickness_mm", m_to_mm(folded.thickness)},
      {"first_crease", to_string(options.first_crease)},
      {"tabs",
       {{"enabled", options.tabs.enabled},
        {"depth_mm", options.tabs.depth_mm},
        {"inset_fraction", options.tabs.inset_fraction}}},
      {"kerf_mm", options.kerf_mm},
  };
}

}  // namespace

std::string to_string(CreaseKind kind) {
  return kind == CreaseKind::Mountain ? "mountain" : "valley";
}

FoldPattern::Box FoldPattern::cut_bounds() const {
  Box box = empty_box();
  for (const Point2& p : outline) extend(box, p);
  return box;
}

FoldPattern::Box FoldPattern::sheet_bounds() const {
  std::vector<Point2> tips;
  for (const Tab& tab : tabs)
    for (std::size_t i = 2; i < tab.polygon.size(); ++i) tips.push_back(tab.polygon[i]);
  Box box = empty_box();
  for (const Point2& p : outline) {
    const bool tip = std::any_of(tips.begin(), tips.end(), [&](Point2 t) { return same(t, p); });
    if (!tip) extend(box, p);
  }
  return box;
}

FoldPattern generate_layer_pattern(const LayerSpec& layer, const PatternOptions& options) {
  validate(layer);
  if (!(options.kerf_mm >= 0.0 && std::isfinite(options.kerf_mm)))
    throw DomainError("kerf must be >= 0");
  if (options.tabs.enabled &&
      !(options.tabs.depth_mm > 0.0 && options.tabs.inset_fraction >= 0.0 &&
        options.tabs.inset_fraction < 0.5))
    throw DomainError("tab depth must be > 0 and inset fraction in [0, 0.5)");

  const int n = layer.crease_count;
  const double W = m_to_mm(layer.panel_width);
  std::vector<double> heights;  // boundary k = 0..n+1
  heights.reserve(n + 2);
  heights.push_back(m_to_mm(layer.crease_lengths.front()));
  for (double L : layer.crease_lengths) heights.push_back(m_to_mm(L));
  heights.push_back(m_to_mm(layer.crease_lengths.back()));
  const double H = *std::max_element(heights.begin(), heights.end());

  if (options.fab_limit_mm) {
    const double width = (n + 1) * W;
    if (width > *options.fab_limit_mm || H > *options.fab_limit_mm)
      throw FabricationLimitExceeded("flat sheet " + std::to_string(width) + " x " +
                                     std::to_string(H) + " mm exceeds the fabrication limit of " +
                                     std::to_string(*options.fab_limit_mm) + " mm");
  }

  auto bottom = [&](int k) { return Point2{k * W, 0.5 * (H - heights[k])}; };
  auto top = [&](int k) { return Point2{k * W, 0.5 * (H + heights[k])}; };

  TabSpec no_tabs = options.tabs;
  no_tabs.enabled = false;

  FoldPattern pat;
  for (int k = 0; k <= n; ++k) append_edge(pat, bottom(k), bottom(k + 1), options.tabs);
  append_edge(pat, bottom(n + 1), top(n + 1), no_tabs);
  for (int k = n + 1; k >= 1; --k) append_edge(pat, top(k), top(k - 1), options.tabs);
  append_edge(pat, top(0), bottom(0), no_tabs);
  drop_repeats(pat.outline);
  drop_collinear(pat.outline);
  if (options.kerf_mm > 0.0) pat.outline = offset_outward(pat.outline, 0.5 * options.kerf_mm);

  CreaseKind kind = options.first_crease;
  for (int j = 1; j <= n; ++j) {
    pat.creases.push_back({.segment = {bottom(j), top(j)}, .kind = kind});
    kind = kind == CreaseKind::Mountain ? CreaseKind::Valley : CreaseKind::Mountain;
  }
  pat.metadata = layer_metadata(layer, options);
  return pat;
}

AssemblyKit generate_assembly_kit(const Assembly& assembly, const PatternOptions& options) {
  AssemblyKit kit;
  kit.layer1 = generate_layer_pattern(assembly.layer1, options);
  kit.layer2 = generate_layer_pattern(assembly.layer2, options);
  kit.layer1.metadata["layer"] = 1;
  kit.layer2.metadata["layer"] = 2;

  const FoldedDimensions f1 = folded_dimensions(assembly.layer1);
  const FoldedDimensions f2 = folded_dimensions(assembly.layer2);
  kit.notes = {
      {"orientation", "layer 2 creases run at 90 degrees to layer 1 creases"},
      {"connectors", "tabs join the layers along their chordwise edges"},
      {"layer1_folded_length_mm", m_to_mm(f1.length)},
      {"layer2_folded_length_mm", m_to_mm(f2.length)},
      // Each layer stands W cos(alpha/2) tall; the stack is their sum.
      {"stack_thickness_mm", m_to_mm(0.5 * (f1.thickness + f2.thickness))},
  };
  kit.layer1.metadata["assembly"] = kit.notes;
  kit.layer2.metadata["assembly"] = kit.notes;
  return kit;
}

AssemblyKit generate_assembly_kit(const DesignSolution& solution, const Material& material,
                                  const Layout& layout, const PatternOptions& options) {
  const DesignPoint& p = solution.point;
  return generate_assembly_kit(identical_assembly(make_layer(material, p.W, p.alpha, p.n, layout)),
                               options);
}

double polygon_area(const std::vector<Point2>& polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i)
    twice += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  return 0.5 * twice;
}

bool is_simple_polygon(const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % n];
    if (same(a, b)) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(a, b, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i)
    if (distance_to_segment(p, polygon[i], polygon[(i + 1) % n]) < 1e-12) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      inside = !inside;
  }
  return inside;
}

bool nearly_equal(const FoldPattern& a, const FoldPattern& b, double tol_mm) {
  auto close = [&](Point2 p, Point2 q) {
    return std::abs(p.x - q.x) <= tol_mm && std::abs(p.y - q.y) <= tol_mm;
  };
  auto close_poly = [&](const std::vector<Point2>& p, const std::vector<Point2>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!close(p[i], q[i])) return false;
    return true;
  };
  if (!close_poly(a.outline, b.outline)) return false;
  if (a.creases.size() != b.creases.size() || a.tabs.size() != b.tabs.size()) return false;
  for (std::size_t i = 0; i < a.creases.size(); ++i) {
    const Crease& ca = a.creases[i];
    const Crease& cb = b.creases[i];
    if (ca.kind != cb.kind || !close(ca.segment.a, cb.segment.a) ||
        !close(ca.segment.b, cb.segment.b))
      return false;
  }
  for (std::size_t i = 0; i < a.tabs.size(); ++i) {
    if (!close_poly(a.tabs[i].polygon, b.tabs[i].polygon)) return false;
    if (!close(a.tabs[i].fold.a, b.tabs[i].fold.a) || !close(a.tabs[i].fold.b, b.tabs[i].fold.b))
      return false;
  }
  return a.metadata == b.metadata;
}

}  // namespace oadlc
