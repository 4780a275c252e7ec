#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oadlc/layout.hpp"
#include "oadlc/pattern.hpp"
#include "oadlc/stiffness.hpp"
#include "oadlc/units.hpp"

using namespace oadlc;

namespace {

Material film() { return {2.7e9, 0.43, 0.125e-3, 1390.0}; }

LayerSpec square(double W_mm, int n, double alpha_deg) {
  return square_layer(film(), units::mm_to_m(W_mm), units::deg_to_rad(alpha_deg), n);
}

double length(const Segment& s) { return std::hypot(s.b.x - s.a.x, s.b.y - s.a.y); }

// Structural invariants every emitted pattern must satisfy.
void expect_well_formed(const FoldPattern& p, const LayerSpec& layer) {
  const int n = layer.crease_count;
  ASSERT_EQ(p.creases.size(), static_cast<std::size_t>(n));
  for (int j = 1; j < n; ++j) EXPECT_NE(p.creases[j].kind, p.creases[j - 1].kind);
  EXPECT_TRUE(is_simple_polygon(p.outline));
  EXPECT_GT(polygon_area(p.outline), 0.0);
  for (const auto& c : p.creases) {
    EXPECT_GT(length(c.segment), 0.0);
    const Point2 mid{0.5 * (c.segment.a.x + c.segment.b.x), 0.5 * (c.segment.a.y + c.segment.b.y)};
    EXPECT_TRUE(point_in_polygon(mid, p.outline));
  }
  for (const auto& t : p.tabs) EXPECT_GT(length(t.fold), 0.0);
  const auto box = p.sheet_bounds();
  double H = 0;
  for (double L : layer.crease_lengths) H = std::max(H, units::m_to_mm(L));
  EXPECT_NEAR(box.width(), (n + 1) * units::m_to_mm(layer.panel_width), 1e-9);
  EXPECT_NEAR(box.height(), H, 1e-9);
}

}  // namespace

TEST(LayerPattern, CaseStudySheet) {
  const LayerSpec l = square(8, 8, 84);
  const FoldPattern p = generate_layer_pattern(l);
  expect_well_formed(p, l);
  EXPECT_EQ(p.creases.front().kind, CreaseKind::Mountain);
  EXPECT_NEAR(p.sheet_bounds().width(), 72.0, 1e-9);
  EXPECT_NEAR(p.sheet_bounds().height(), 48.18, 0.01);
  EXPECT_EQ(p.tabs.size(), 18u);  // top and bottom of every panel
  EXPECT_GT(p.cut_bounds().height(), p.sheet_bounds().height());
}

TEST(LayerPattern, SingleCrease) {
  const LayerSpec l = square(10, 1, 120);
  const FoldPattern p = generate_layer_pattern(l);
  expect_well_formed(p, l);
  EXPECT_EQ(p.tabs.size(), 4u);
}

TEST(LayerPattern, MountainValleyParity) {
  PatternOptions opt;
  opt.first_crease = CreaseKind::Valley;
  const FoldPattern p = generate_layer_pattern(square(5, 7, 60), opt);
  int mountains = 0, valleys = 0;
  for (const auto& c : p.creases) (c.kind == CreaseKind::Mountain ? mountains : valleys)++;
  EXPECT_EQ(p.creases.front().kind, CreaseKind::Valley);
  EXPECT_EQ(valleys, 4);
  EXPECT_EQ(mountains, 3);
}

TEST(LayerPattern, CircularChordHeights) {
  const double W = 8e-3, R = 40e-3, alpha = units::deg_to_rad(84);
  const int n = 7;
  const LayerSpec l = circular_layer(film(), W, alpha, n, R);
  const FoldPattern p = generate_layer_pattern(l);
  expect_well_formed(p, l);
  for (int j = 1; j <= n; ++j) {
    const double c = (j - 0.5 * (n + 1)) * W * std::sin(alpha / 2);
    EXPECT_NEAR(length(p.creases[j - 1].segment), units::m_to_mm(2 * std::sqrt(R * R - c * c)), 1e-9);
  }
}

TEST(LayerPattern, TabbedOutlineKeepsCorners) {
  const FoldPattern p = generate_layer_pattern(square(8, 8, 84));
  const auto box = p.sheet_bounds();
  bool lower_right = false, upper_left = false;
  for (const auto& q : p.outline) {
    lower_right = lower_right || (q.x == box.max_x && q.y == box.min_y);
    upper_left = upper_left || (q.x == box.min_x && q.y == box.max_y);
  }
  EXPECT_TRUE(lower_right);
  EXPECT_TRUE(upper_left);
  // sheet area plus one rectangle per tab
  const double tab = 8 * 0.7 * 5.0;
  EXPECT_NEAR(polygon_area(p.outline), box.width() * box.height() + 18 * tab, 1e-9);
}

TEST(LayerPattern, NoTabsGivesRectangleForSquareLayer) {
  PatternOptions opt;
  opt.tabs.enabled = false;
  const FoldPattern p = generate_layer_pattern(square(8, 8, 84), opt);
  EXPECT_EQ(p.outline.size(), 4u);
  EXPECT_TRUE(p.tabs.empty());
  EXPECT_NEAR(polygon_area(p.outline), 72.0 * p.sheet_bounds().height(), 1e-9);
}

TEST(LayerPattern, KerfGrowsOutline) {
  PatternOptions opt;
  opt.tabs.enabled = false;
  opt.kerf_mm = 0.2;
  const FoldPattern p = generate_layer_pattern(square(8, 8, 84), opt);
  EXPECT_NEAR(p.cut_bounds().width(), 72.2, 1e-9);
  EXPECT_TRUE(is_simple_polygon(p.outline));
  opt.kerf_mm = -1;
  EXPECT_THROW(generate_layer_pattern(square(8, 8, 84), opt), DomainError);
}

TEST(LayerPattern, FabricationLimit) {
  PatternOptions opt;
  opt.fab_limit_mm = 71.9;
  EXPECT_THROW(generate_layer_pattern(square(8, 8, 84), opt), FabricationLimitExceeded);
  opt.fab_limit_mm = 72.0;
  EXPECT_NO_THROW(generate_layer_pattern(square(8, 8, 84), opt));
}

TEST(LayerPattern, BadTabSpec) {
  PatternOptions opt;
  opt.tabs.depth_mm = 0;
  EXPECT_THROW(generate_layer_pattern(square(8, 8, 84), opt), DomainError);
  opt.tabs.depth_mm = 3;
  opt.tabs.inset_fraction = 0.5;
  EXPECT_THROW(generate_layer_pattern(square(8, 8, 84), opt), DomainError);
}

TEST(LayerPattern, RandomSquareLayersAreWellFormedAndRoundTrip) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> W(1, 30), a(5, 180);
  std::uniform_int_distribution<int> n(1, 60);
  for (int i = 0; i < 60; ++i) {
    const LayerSpec l = square(W(rng), n(rng), a(rng));
    const FoldPattern p = generate_layer_pattern(l);
    expect_well_formed(p, l);
    EXPECT_TRUE(nearly_equal(read_svg(write_svg(p)), p, 1e-6));
  }
}

TEST(Svg, Conventions) {
  const std::string svg = write_svg(generate_layer_pattern(square(8, 3, 84)));
  EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
  EXPECT_NE(svg.find("width=\""), std::string::npos);
  EXPECT_NE(svg.find("mm\""), std::string::npos);
  EXPECT_NE(svg.find("<g class=\"cut\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.1\">"),
            std::string::npos);
  EXPECT_NE(svg.find("class=\"mountain\" fill=\"none\" stroke=\"#ff0000\" stroke-width=\"0.1\" "
                     "stroke-dasharray=\"4 2\""),
            std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray=\"4 2 1 2\""), std::string::npos);
  EXPECT_NE(svg.find("class=\"tab-fold\""), std::string::npos);
  EXPECT_NE(svg.find("<!-- oadlc-design-record"), std::string::npos);
}

TEST(Svg, RoundTripPreservesMetadata) {
  FoldPattern p = generate_layer_pattern(square(8, 8, 84));
  p.metadata["note"] = "a -- b";
  const std::string svg = write_svg(p);
  // the comment body must not contain a double hyphen
  const auto open = svg.find("oadlc-design-record");
  const auto body = svg.substr(open, svg.find("\n-->") - open);
  EXPECT_EQ(body.find("--"), std::string::npos);
  const FoldPattern back = read_svg(svg);
  EXPECT_TRUE(nearly_equal(back, p, 1e-6));
  EXPECT_EQ(back.metadata["note"], "a -- b");
  EXPECT_EQ(write_svg(back), svg);
}

TEST(Svg, RejectsDocumentsWithoutRecord) {
  EXPECT_THROW(read_svg("<svg></svg>"), std::runtime_error);
}

TEST(SegmentsCsv, OneRowPerSegment) {
  const FoldPattern p = generate_layer_pattern(square(8, 4, 84));
  const std::string csv = write_segments_csv(p);
  EXPECT_EQ(csv.rfind("x1,y1,x2,y2,class\n", 0), 0u);
  const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  EXPECT_EQ(static_cast<std::size_t>(rows), p.outline.size() + p.creases.size() + p.tabs.size());
}

TEST(Kit, IdenticalLayersAreCongruent) {
  const AssemblyKit kit = generate_assembly_kit(identical_assembly(square(8, 8, 84)));
  FoldPattern a = kit.layer1, b = kit.layer2;
  a.metadata.erase("layer");
  b.metadata.erase("layer");
  EXPECT_TRUE(nearly_equal(a, b, 0.0));
  EXPECT_EQ(kit.layer1.metadata["layer"], 1);
  EXPECT_EQ(kit.layer2.metadata["layer"], 2);
}

TEST(Kit, FromSolutionEchoesFoldedTargets) {
  DesignSolution sol;
  sol.point = {8e-3, units::deg_to_rad(84), 8};
  const AssemblyKit kit = generate_assembly_kit(sol, film(), Layout::square());
  EXPECT_NEAR(kit.notes["layer1_folded_length_mm"].get<double>(), 48.18, 0.01);
  EXPECT_NEAR(kit.notes["stack_thickness_mm"].get<double>(), 11.89, 0.01);
  const FoldedDimensions f = folded_dimensions(square(8, 8, 84));
  EXPECT_DOUBLE_EQ(kit.layer1.metadata["folded_length_mm"].get<double>(), units::m_to_mm(f.length));
  EXPECT_TRUE(nearly_equal(read_svg(write_svg(kit.layer2)), kit.layer2, 1e-6));
}
