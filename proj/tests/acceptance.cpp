// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed here.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oadlc/layout.hpp"
#include "oadlc/optimizer.hpp"
#include "oadlc/pattern.hpp"
#include "oadlc/stiffness.hpp"
#include "oadlc/units.hpp"
#include "oracle.hpp"

using namespace oadlc;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kGeometryTolMm = 0.01;
constexpr double kGeometryRuntimeS = 1.0;
constexpr double kFeasibilityRuntimeS = 1.0;
constexpr double kDominanceMargin = 0.20;
constexpr double kDominanceRuntimeS = 10.0;
constexpr double kOracleRelTol = 1e-12;
constexpr int kOracleSamples = 1000;
constexpr double kIdentityRelTol = 1e-12;
constexpr double kEnumerationRuntimeS = 60.0;
constexpr double kBoundingBoxTolMm = 1e-9;
constexpr double kRoundTripTolMm = 1e-6;

Material film() { return {2.7e9, 0.43, 0.125e-3, 1390.0}; }

DesignConstraints case_study() {
  DesignConstraints c;
  c.fab_length = 250e-3;
  c.folded_length_min = 48e-3;
  c.folded_length_max = 60e-3;
  c.thickness_min = 10e-3;
  c.thickness_max = 12.5e-3;
  c.D_min = 80e-3;
  return c;
}

DesignPoint pt(double W_mm, int n, double alpha_deg) {
  return {units::mm_to_m(W_mm), units::deg_to_rad(alpha_deg), n};
}

LayerSpec layer_at(const DesignPoint& p) { return square_layer(film(), p.W, p.alpha, p.n); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  ["
            << o.detail << "]" << std::endl;
}

const std::vector<DesignPoint> kCases{pt(8, 8, 84), pt(6, 31, 29), pt(6, 37, 25), pt(6, 35, 32),
                                      pt(6, 40, 30)};

Outcome geometry() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto f = folded_dimensions(layer_at(kCases[0]));
  const double L = units::m_to_mm(f.length), t = units::m_to_mm(f.thickness);
  const double dt = seconds_since(t0);
  const bool ok = std::abs(L - 48.18) <= kGeometryTolMm && std::abs(t - 11.89) <= kGeometryTolMm &&
                  dt < kGeometryRuntimeS;
  return {ok, "L=" + num(L) + " mm, t_d=" + num(t) + " mm, " + num(dt) + " s"};
}

Outcome case_feasibility() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (std::size_t i = 0; i < kCases.size(); ++i) {
    const auto r = check_feasible(kCases[i], film(), case_study());
    o.pass = o.pass && r.feasible;
    o.detail += "case " + std::to_string(i + 1) + ": ";
    if (r.feasible) {
      o.detail += "feasible; ";
    } else {
      const auto* w = r.most_violated();
      o.detail += std::string("violates ") + std::string(w->name) + " (" +
                  num(units::m_to_mm(w->value)) + " vs " + num(units::m_to_mm(w->bound)) + " mm); ";
    }
  }
  const double dt = seconds_since(t0);
  o.pass = o.pass && dt < kFeasibilityRuntimeS;
  o.detail += num(dt) + " s";
  return o;
}

Outcome dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  const DesignSolution sol = optimize(film(), case_study());
  const double dt = seconds_since(t0);
  double lightest = INFINITY;
  for (std::size_t i = 1; i < kCases.size(); ++i)
    lightest = std::min(lightest, mass(identical_assembly(layer_at(kCases[i]))));
  const bool ok = sol.feasibility.feasible && sol.mass < (1 - kDominanceMargin) * lightest &&
                  dt < kDominanceRuntimeS;
  return {ok, "optimum " + num(units::kg_to_g(sol.mass)) + " g at W=" +
                  num(units::m_to_mm(sol.point.W)) + " mm n=" + std::to_string(sol.point.n) +
                  " alpha=" + num(units::rad_to_deg(sol.point.alpha)) + " deg; lightest naive " +
                  num(units::kg_to_g(lightest)) + " g; " + num(dt) + " s"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> W(1e-3, 50e-3), a(0.05, kPi), L(5e-3, 300e-3),
      eta(-kPi, kPi), nu(0.0, 0.49);
  std::uniform_int_distribution<int> n(1, 200);
  double worst = 0;
  for (int i = 0; i < kOracleSamples; ++i) {
    Material m = film();
    m.poisson_ratio = nu(rng);
    LayerSpec l;
    if (i % 2 == 0) {
      l = square_layer(m, W(rng), a(rng), n(rng));
    } else {
      l = {m, W(rng), a(rng), n(rng), {}};
      for (int j = 0; j < l.crease_count; ++j) l.crease_lengths.push_back(L(rng));
    }
    const bool panels = i % 5 == 0;
    const ModelOptions opt{panels ? UnitCount::Panels : UnitCount::Creases};
    const auto got = layer_stiffness(l, opt);
    const auto ref = oracle::reference_layer(l, panels);
    for (double e : {oracle::rel_err(got.inplane.chordwise, ref.inplane.chordwise),
                     oracle::rel_err(got.inplane.spanwise, ref.inplane.spanwise),
                     oracle::rel_err(got.bending.chordwise, ref.bending.chordwise),
                     oracle::rel_err(got.bending.spanwise, ref.bending.spanwise)})
      worst = std::max(worst, e);
    // pair with a second random layer for the assembly check
    const LayerSpec other = square_layer(m, W(rng), a(rng), n(rng));
    const double e_ = eta(rng);
    const Assembly as{l, other};
    const auto ref2 = oracle::reference_layer(other, panels);
    worst = std::max(worst, oracle::rel_err(pipeline_K(as, e_, opt),
                                            oracle::reference_combine(ref.inplane, ref2.inplane, e_)));
    worst = std::max(worst, oracle::rel_err(pipeline_D(as, e_, opt),
                                            oracle::reference_combine(ref.bending, ref2.bending, e_)));
  }
  return {worst <= kOracleRelTol,
          std::to_string(kOracleSamples) + " layers, worst relative error " + num(worst)};
}

Outcome identities() {
  double worst = 0;
  auto track = [&](double a, double b) { worst = std::max(worst, oracle::rel_err(a, b)); };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> W(1e-3, 50e-3), a(0.05, kPi), eta(-kPi, kPi), E(1e8, 1e11);
  std::uniform_int_distribution<int> n(1, 100);
  for (int i = 0; i < 200; ++i) {
    const LayerSpec l1 = square_layer(film(), W(rng), a(rng), n(rng));
    const LayerSpec l2 = square_layer(film(), W(rng), a(rng), n(rng));
    const Assembly as{l1, l2};
    const double e = eta(rng);
    // E-linearity
    const double scale = E(rng) / film().youngs_modulus;
    Assembly scaled = as;
    scaled.layer1.material.youngs_modulus *= scale;
    scaled.layer2.material.youngs_modulus *= scale;
    track(pipeline_K(scaled, e), scale * pipeline_K(as, e));
    track(pipeline_D(scaled, e), scale * pipeline_D(as, e));
    // quarter-turn sum
    track(pipeline_D(as, e) + pipeline_D(as, e + kPi / 2), pipeline_D(as, 0) + pipeline_D(as, kPi / 2));
    track(pipeline_K(as, e) + pipeline_K(as, e + kPi / 2), pipeline_K(as, 0) + pipeline_K(as, kPi / 2));
    // identical-layer eta invariance
    const Assembly same = identical_assembly(l1);
    track(pipeline_D(same, e), pipeline_D(same, 0));
    track(pipeline_K(same, e), pipeline_K(same, 0));
    // series bound and parallel sum against single-crease layers
    const auto m = triangular_moduli(l1);
    LayerSpec single = l1;
    single.crease_count = 1;
    single.crease_lengths = {l1.crease_lengths[0]};
    const auto one_k = layer_inplane(single, m), one_d = layer_bending(single, m);
    const auto all_k = layer_inplane(l1, m), all_d = layer_bending(l1, m);
    track(all_k.chordwise, one_k.chordwise / l1.crease_count);
    track(all_k.spanwise, one_k.spanwise * l1.crease_count);
    track(all_d.chordwise, one_d.chordwise / l1.crease_count);
    track(all_d.spanwise, one_d.spanwise * l1.crease_count);
    if (!(all_k.chordwise <= one_k.chordwise * (1 + kIdentityRelTol))) worst = INFINITY;
  }
  // flat collapse at nu = 0
  const double Ey = 2.7e9;
  const LayerSpec flat{{Ey, 0.0, 0.125e-3, 1390}, 8e-3, kPi, 1, {0.05}};
  const auto m = triangular_moduli(flat);
  track(m.E_cx, Ey / 3);
  track(m.E_cy, 0.75 * Ey);
  track(m.E_bx, 0.5 * Ey);
  track(m.E_by, Ey);
  return {worst <= kIdentityRelTol, "worst relative deviation " + num(worst)};
}

Outcome regression_lock() {
  std::ifstream f(std::string(OADLC_SOURCE_DIR) + "/tests/data/table1_provenance.json");
  const auto doc = nlohmann::json::parse(f);
  const double tol = doc["lock_tolerance_relative"].get<double>();
  Outcome o;
  for (const auto& c : doc["cases"]) {
    const DesignPoint p = pt(c["W_mm"].get<double>(), c["n"].get<int>(), c["alpha_deg"].get<double>());
    const Assembly a = identical_assembly(layer_at(p));
    const double D = units::nm_to_mnm(pipeline_D(a, 0.0));
    const double m = units::kg_to_g(mass(a));
    const bool ok = oracle::rel_err(D, c["D_mNm"].get<double>()) <= tol &&
                    oracle::rel_err(m, c["mass_g"].get<double>()) <= tol;
    o.pass = o.pass && ok;
    o.detail += "case " + std::to_string(c["case"].get<int>()) + " D=" + num(D) + " mN*m; ";
  }
  double last = 0;
  std::string trend;
  for (double W : {8.0, 10.0, 12.0, 14.0}) {
    const double D = pipeline_D(identical_assembly(layer_at(pt(W, 11, 90))), 0.0);
    o.pass = o.pass && D > last;
    trend += num(units::nm_to_mnm(D)) + (W < 14 ? " < " : "");
    last = D;
  }
  o.detail += "W sweep D: " + trend;
  return o;
}

Outcome enumeration() {
  const GridResolution grid;  // 0.5 mm, 1 degree
  const auto t0 = std::chrono::steady_clock::now();
  const DesignSolution ex = exhaustive_search(film(), case_study(), grid);
  const double dt = seconds_since(t0);
  const DesignSolution op = optimize(film(), case_study());
  // slack: largest mass change when stepping one grid cell from the grid optimum
  double slack = 0;
  for (int dw : {-1, 0, 1})
    for (int da : {-1, 0, 1}) {
      const double W = ex.point.W + dw * grid.W_step, A = ex.point.alpha + da * grid.alpha_step;
      if (W <= 0 || A <= 0 || A > kPi) continue;
      slack = std::max(slack, std::abs(mass(identical_assembly(layer_at({W, A, ex.point.n}))) - ex.mass));
    }
  const bool ok = std::abs(op.mass - ex.mass) <= slack && op.mass <= ex.mass * (1 + 1e-9) &&
                  dt < kEnumerationRuntimeS;
  return {ok, "exhaustive " + num(units::kg_to_g(ex.mass)) + " g (n=" + std::to_string(ex.point.n) +
                  "), optimize " + num(units::kg_to_g(op.mass)) + " g, slack " +
                  num(units::kg_to_g(slack)) + " g, enumeration " + num(dt) + " s"};
}

Outcome patterns() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> W(1, 30), a(5, 180);
  std::uniform_int_distribution<int> n(1, 80);
  int checked = 0, limits = 0;
  for (int i = 0; i < 200; ++i) {
    const LayerSpec l = square_layer(film(), units::mm_to_m(W(rng)), units::deg_to_rad(a(rng)), n(rng));
    const FoldPattern p = generate_layer_pattern(l);
    const int count = l.crease_count;
    if (p.creases.size() != static_cast<std::size_t>(count)) return {false, "crease count"};
    for (int j = 1; j < count; ++j)
      if (p.creases[j].kind == p.creases[j - 1].kind) return {false, "alternation"};
    const auto box = p.sheet_bounds();
    const double width = (count + 1) * units::m_to_mm(l.panel_width);
    const double height = units::m_to_mm(l.crease_lengths[0]);
    if (std::abs(box.width() - width) > kBoundingBoxTolMm || std::abs(box.height() - height) > kBoundingBoxTolMm)
      return {false, "bounding box " + num(box.width()) + " x " + num(box.height())};
    if (!nearly_equal(read_svg(write_svg(p)), p, kRoundTripTolMm)) return {false, "round trip"};
    // fabrication limit: just below the larger side must refuse, at it must pass
    PatternOptions opt;
    const double side = std::max(width, height);
    opt.fab_limit_mm = side * (1 - 1e-9);
    try {
      generate_layer_pattern(l, opt);
      return {false, "fabrication limit not enforced"};
    } catch (const FabricationLimitExceeded&) {
      ++limits;
    }
    opt.fab_limit_mm = side;
    generate_layer_pattern(l, opt);
    ++checked;
  }
  return {true, std::to_string(checked) + " random square layers, " + std::to_string(limits) +
                    " limit refusals"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "oadlc_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cfg = std::string(OADLC_SOURCE_DIR) + "/configs/case_study.json";
  auto run = [&](const std::string& threads) -> std::string {
    const std::string common = " --config " + cfg + " --set optimizer.threads=" + threads;
    const std::string opt = std::string(OADLC_CLI_PATH) + " optimize" + common +
                            " --emit-pattern --out " + (dir / "opt").string() + " > " +
                            (dir / "opt.stdout").string();
    const std::string sweep = std::string(OADLC_CLI_PATH) + " sweep" + common +
                              " --vary W --values 4,6,8,10,12,14 --out " + (dir / "sweep").string() +
                              " > " + (dir / "sweep.stdout").string();
    for (const std::string& cmd : {opt, sweep}) {
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {};
    }
    return slurp(dir / "opt.stdout") + slurp(dir / "opt/solution.json") +
           slurp(dir / "opt/layer1.svg") + slurp(dir / "opt/layer2.svg") +
           slurp(dir / "sweep.stdout") + slurp(dir / "sweep/sweep.csv");
  };
  const std::string a = run("4"), b = run("4");
  std::string serial = run("1");
  if (a.empty() || b.empty() || serial.empty()) return {false, "a command failed"};
  // the records echo the config, so the serial run shows its own thread count
  for (auto pos = serial.find("\"threads\": 1"); pos != std::string::npos;
       pos = serial.find("\"threads\": 1", pos))
    serial.replace(pos, 12, "\"threads\": 4");
  const bool ok = a == b && serial == a;
  return {ok, "repeat runs identical: " + std::string(a == b ? "yes" : "no") +
                  "; serial vs 4 threads identical: " + std::string(serial == a ? "yes" : "no") +
                  "; " + std::to_string(a.size()) + " bytes"};
}

}  // namespace

int main() {
  report(1, "geometry reproduction", geometry);
  report(2, "case-study feasibility", case_feasibility);
  report(3, "optimizer dominance", dominance);
  report(4, "oracle equivalence", oracle_equivalence);
  report(5, "analytic identities", identities);
  report(6, "stiffness regression lock and width trend", regression_lock);
  report(7, "optimizer vs enumeration", enumeration);
  report(8, "pattern correctness", patterns);
  report(9, "determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
