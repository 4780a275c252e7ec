#ifndef OADLC_PATTERN_HPP
#define OADLC_PATTERN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oadlc/layout.hpp"
#include "oadlc/optimizer.hpp"
#include "oadlc/types.hpp"

namespace oadlc {

// Pattern geometry is in millimetres, the unit cutters expect.

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Point2 a;
  Point2 b;
};

enum class CreaseKind { Mountain, Valley };

std::string to_string(CreaseKind kind);

struct Crease {
  Segment segment;
  CreaseKind kind = CreaseKind::Mountain;
};

/// Connector tab hinged on `fold`; `polygon` is [fold.a, fold.b, outer b, outer a].
struct Tab {
  std::vector<Point2> polygon;
  Segment fold;
};

struct FoldPattern {
  std::vector<Point2> outline;  // closed, counter-clockwise, last vertex != first
  std::vector<Crease> creases;
  std::vector<Tab> tabs;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  struct Box {
    double min_x, min_y, max_x, max_y;
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
  };

  /// Extent of the panel sheet alone, tabs excluded. Exact for zero kerf;
  /// with kerf the offset tab tips are counted as sheet.
  Box sheet_bounds() const;
  /// Extent of everything that gets cut, tabs included.
  Box cut_bounds() const;
};

struct TabSpec {
  bool enabled = true;
  double depth_mm = 5.0;
  double inset_fraction = 0.15;  // trimmed from each end of a panel edge
};

struct PatternOptions {
  TabSpec tabs;
  CreaseKind first_crease = CreaseKind::Mountain;
  double kerf_mm = 0.0;  // outline grows outward by kerf/2
  std::optional<double> fab_limit_mm;
};

class FabricationLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (n+1) panels of width W side by side; crease j spans height L_j, end
/// panels mirror their neighbouring crease. Creases alternate starting with
/// `first_crease`; tabs sit on the two chordwise edges of every panel.
FoldPattern generate_layer_pattern(const LayerSpec& layer, const PatternOptions& options = {});

struct AssemblyKit {
  FoldPattern layer1;
  FoldPattern layer2;
  nlohmann::ordered_json notes;
};

AssemblyKit generate_assembly_kit(const Assembly& assembly, const PatternOptions& options = {});

/// Kit for an optimizer result: both layers share the solution geometry.
AssemblyKit generate_assembly_kit(const DesignSolution& solution, const Material& material,
                                  const Layout& layout, const PatternOptions& options = {});

// SVG encoding (svg.cpp).
std::string write_svg(const FoldPattern& pattern);
FoldPattern read_svg(const std::string& svg);
std::string write_segments_csv(const FoldPattern& pattern);

// Geometry helpers shared with the tests.
double polygon_area(const std::vector<Point2>& polygon);
bool is_simple_polygon(const std::vector<Point2>& polygon);
/// Strictly inside (boundary excluded).
bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon);
bool nearly_equal(const FoldPattern& a, const FoldPattern& b, double tol_mm);

}  // namespace oadlc

#endif  // OADLC_PATTERN_HPP
