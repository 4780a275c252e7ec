#include "oadlc/optimizer.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <tuple>

#include "oadlc/simplex.hpp"
#include "oadlc/stiffness.hpp"

namespace oadlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Assessment {
  FeasibilityReport report;
  double mass = kNaN;
  double K_eta = kNaN;
  double D_eta = kNaN;
  bool strict = false;  // every slack >= 0 without tolerance
};

void add_check(FeasibilityReport& r, std::string_view name, double value, double bound,
               double slack) {
  ConstraintCheck check{.name = name, .value = value, .bound = bound, .slack = slack};
  if (std::isnan(slack)) {
    check.satisfied = false;
  } else {
    const double scale = std::max(std::abs(value), std::abs(bound));
    check.satisfied = slack >= -kFeasibilityTolerance * scale;
  }
  r.checks.push_back(check);
}

void add_upper(FeasibilityReport& r, std::string_view name, double value, double bound) {
  add_check(r, name, value, bound, bound - value);
}

void add_lower(FeasibilityReport& r, std::string_view name, double value, double bound) {
  add_check(r, name, value, bound, value - bound);
}

Assessment assess(const DesignPoint& p, const Material& material, const DesignConstraints& c,
                  const ModelOptions& model, double connector_allowance) {
  Assessment out;
  FeasibilityReport& r = out.report;
  r.checks.reserve(9);

  const double s = std::sin(p.alpha / 2.0);
  const double folded_length = (p.n + 1) * p.W * s;
  const double thickness = 2.0 * p.W * std::cos(p.alpha / 2.0);
  const double flat_width = (p.n + 1) * p.W;

  if (c.layout.kind == Layout::Kind::Circular)
    add_upper(r, "layout_disk", folded_length, 2.0 * c.layout.radius);

  std::optional<LayerSpec> layer;
  try {
    layer = make_layer(material, p.W, p.alpha, p.n, c.layout);
  } catch (const DomainError&) {
    if (c.layout.kind != Layout::Kind::Circular) throw;
  }

  if (c.fab_length) {
    add_upper(r, "fab_flat_width", flat_width, *c.fab_length);
    if (layer) {
      const double longest =
          *std::max_element(layer->crease_lengths.begin(), layer->crease_lengths.end());
      add_upper(r, "fab_crease_length", longest, *c.fab_length);
    } else {
      add_check(r, "fab_crease_length", kNaN, *c.fab_length, kNaN);
    }
  }
  if (c.folded_length_min) add_lower(r, "folded_length_min", folded_length, *c.folded_length_min);
  if (c.folded_length_max) add_upper(r, "folded_length_max", folded_length, *c.folded_length_max);
  if (c.thickness_min) add_lower(r, "thickness_min", thickness, *c.thickness_min);
  if (c.thickness_max) add_upper(r, "thickness_max", thickness, *c.thickness_max);

  if (layer) {
    const LayerStiffness ls = layer_stiffness(*layer, model);
    out.K_eta = combine_orthogonal(ls.inplane, ls.inplane, c.eta);
    out.D_eta = combine_orthogonal(ls.bending, ls.bending, c.eta);
    out.mass = mass(identical_assembly(*layer), connector_allowance);
  }
  if (c.K_min) add_lower(r, "K_min", out.K_eta, *c.K_min);
  if (c.D_min) add_lower(r, "D_min", out.D_eta, *c.D_min);

  r.feasible = true;
  r.max_violation = 0.0;
  out.strict = true;
  for (const auto& check : r.checks) {
    r.feasible = r.feasible && check.satisfied;
    out.strict = out.strict && check.slack >= 0.0;
    const double v = check.normalized_violation();
    if (!std::isnan(v)) r.max_violation = std::max(r.max_violation, v);
  }
  return out;
}

// Largest normalized deficit, negative when every constraint holds with margin.
double signed_violation(const FeasibilityReport& r) {
  double worst = -kInf;
  for (const auto& check : r.checks) {
    const double v = check.normalized_violation();
    if (!std::isnan(v)) worst = std::max(worst, v);
  }
  return r.checks.empty() ? -1.0 : worst;
}

struct Candidate {
  double mass = kInf;
  int n = 0;
  double W = 0.0;
  double alpha = 0.0;
  bool strict = true;  // false: feasible only within tolerance

  bool valid() const { return std::isfinite(mass); }
  DesignPoint point() const { return {W, alpha, n}; }
};

bool better(const Candidate& a, const Candidate& b) {
  if (!a.valid()) return false;
  if (!b.valid()) return true;
  if (a.strict != b.strict) return a.strict;
  return std::tie(a.mass, a.n, a.W, a.alpha) < std::tie(b.mass, b.n, b.W, b.alpha);
}

struct Diagnostic {
  double violation = kInf;
  DesignPoint point;
  std::string constraint;

  void offer(const DesignPoint& p, const FeasibilityReport& r) {
    const double v = r.max_violation;
    if (v < violation) {
      violation = v;
      point = p;
      const ConstraintCheck* worst = r.most_violated();
      constraint = worst ? std::string(worst->name) : std::string();
    }
  }
  void merge(const Diagnostic& other) {
    if (other.violation < violation) *this = other;
  }
};

struct SliceResult {
  Candidate best;
  Diagnostic diagnostic;
  long long evaluations = 0;
};

unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count) across worker threads. Results land in
// per-index slots, so the caller's reduction order never depends on scheduling.
template <class Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::min<unsigned>(thread_count(threads), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers)) fn(i);
    });
}

std::vector<double> axis(double lo, double hi, int count) {
  if (hi <= lo || count <= 1) return {lo};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = (i == count - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

std::vector<double> stepped_axis(double lo, double hi, double step) {
  std::vector<double> v;
  const double span = hi - lo;
  const auto count = static_cast<long long>(std::floor(span / step + 1e-9)) + 1;
  v.reserve(count);
  for (long long i = 0; i < count; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

// n values that can possibly satisfy the size bounds; pruning is conservative.
IntRange viable_n(const DesignConstraints& c) {
  constexpr double kMargin = 1e-6;
  double upper = c.n_bounds.hi + 1.0;
  double lower = c.n_bounds.lo + 1.0;
  const double s_lo = std::sin(c.alpha_bounds.lo / 2.0);
  const double s_hi = std::sin(c.alpha_bounds.hi / 2.0);
  if (c.fab_length) upper = std::min(upper, std::floor(*c.fab_length * (1 + kMargin) / c.W_bounds.lo));
  if (c.folded_length_max)
    upper = std::min(upper, std::floor(*c.folded_length_max * (1 + kMargin) / (c.W_bounds.lo * s_lo)));
  if (c.layout.kind == Layout::Kind::Circular)
    upper = std::min(upper, std::floor(2.0 * c.layout.radius * (1 + kMargin) / (c.W_bounds.lo * s_lo)));
  if (c.folded_length_min)
    lower = std::max(lower, std::ceil(*c.folded_length_min * (1 - kMargin) / (c.W_bounds.hi * s_hi)));
  return {static_cast<int>(lower) - 1, static_cast<int>(std::min(upper, 1e9)) - 1};
}

[[noreturn]] void throw_infeasible(const Diagnostic& d) {
  std::string msg = "no feasible design in the search box";
  if (!d.constraint.empty()) {
    msg += "; closest point violates " + d.constraint;
  }
  throw InfeasibleProblem(msg, d.point, d.constraint, d.violation);
}

DesignSolution finish(const Candidate& best, const Material& material, const DesignConstraints& c,
                      const OptimizerSettings& s, long long evaluations,
                      std::chrono::steady_clock::time_point start) {
  DesignSolution sol = evaluate_design(best.point(), material, c, s);
  sol.stats.evaluations = evaluations;
  sol.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

// Seed grid, optional feasibility restoration, then barrier simplex polish.
SliceResult search_slice(int n, const Material& material, const DesignConstraints& c,
                         const OptimizerSettings& s) {
  SliceResult out;
  const Interval& Wb = c.W_bounds;
  const Interval& Ab = c.alpha_bounds;
  const double W_span = Wb.hi - Wb.lo;
  const double A_span = Ab.hi - Ab.lo;

  auto to_point = [&](const std::array<double, 2>& u) {
    return DesignPoint{Wb.lo + u[0] * W_span, Ab.lo + u[1] * A_span, n};
  };
  auto inside = [](const std::array<double, 2>& u) {
    return u[0] >= 0.0 && u[0] <= 1.0 && u[1] >= 0.0 && u[1] <= 1.0;
  };
  auto run = [&](const DesignPoint& p) {
    ++out.evaluations;
    Assessment a = assess(p, material, c, s.model, s.connector_allowance);
    out.diagnostic.offer(p, a.report);
    if (a.report.feasible) {
      const Candidate cand{a.mass, n, p.W, p.alpha, a.strict};
      if (better(cand, out.best)) out.best = cand;
    }
    return a;
  };

  const auto Ws = axis(Wb.lo, Wb.hi, s.seed_W);
  const auto As = axis(Ab.lo, Ab.hi, s.seed_alpha);
  std::array<double, 2> least_violating{0.0, 0.0};
  double least = kInf;
  for (std::size_t i = 0; i < Ws.size(); ++i) {
    for (std::size_t j = 0; j < As.size(); ++j) {
      const DesignPoint p{Ws[i], As[j], n};
      const Assessment a = run(p);
      const double v = signed_violation(a.report);
      if (v < least) {
        least = v;
        least_violating = {W_span > 0 ? (p.W - Wb.lo) / W_span : 0.0,
                           A_span > 0 ? (p.alpha - Ab.lo) / A_span : 0.0};
      }
    }
  }

  const double cell = 1.0 / std::max(1, std::max(s.seed_W, s.seed_alpha) - 1);

  if (!out.best.valid()) {
    SimplexOptions restore{.initial_step = cell,
                           .relative_tolerance = 1e-12,
                           .min_diameter = 1e-12,
                           .max_iterations = 500};
    simplex_minimize<2>(
        [&](const std::array<double, 2>& u) {
          if (!inside(u)) return kInf;
          return signed_violation(run(to_point(u)).report);
        },
        least_violating, restore);
    if (!out.best.valid()) return out;
  }

  auto barrier = [&](const std::array<double, 2>& u) {
    if (!inside(u)) return kInf;
    const Assessment a = run(to_point(u));
    // tolerance-only points count until a strictly feasible one turns up
    const bool admit = a.strict || (a.report.feasible && !out.best.strict);
    return admit ? a.mass : kInf;
  };

  double step = cell;
  for (int restart = 0; restart < s.polish_restarts; ++restart) {
    const Candidate before = out.best;
    const std::array<double, 2> x0{W_span > 0 ? (before.W - Wb.lo) / W_span : 0.0,
                                   A_span > 0 ? (before.alpha - Ab.lo) / A_span : 0.0};
    SimplexOptions polish{.initial_step = step,
                          .relative_tolerance = s.polish_tolerance,
                          .min_diameter = 1e-15,
                          .max_iterations = s.polish_iterations};
    simplex_minimize<2>(barrier, x0, polish);
    const double gain = before.mass - out.best.mass;
    if (!(gain > s.polish_tolerance * before.mass)) break;
    step *= 0.5;
  }
  return out;
}

}  // namespace

double ConstraintCheck::normalized_violation() const {
  if (std::isnan(slack)) return kNaN;
  const double scale = std::abs(bound) > 0.0 ? std::abs(bound) : std::max(std::abs(value), 1e-300);
  return -slack / scale;
}

const ConstraintCheck* FeasibilityReport::most_violated() const {
  const ConstraintCheck* worst = nullptr;
  double worst_v = -kInf;
  for (const auto& check : checks) {
    if (check.satisfied) continue;
    const double v = check.normalized_violation();
    const double key = std::isnan(v) ? -kInf : v;
    if (!worst || key > worst_v) {
      worst = &check;
      worst_v = key;
    }
  }
  return worst;
}

void validate(const DesignConstraints& c) {
  auto ordered = [](const Interval& i) {
    return std::isfinite(i.lo) && std::isfinite(i.hi) && i.lo <= i.hi;
  };
  if (!ordered(c.W_bounds) || !(c.W_bounds.lo > 0.0))
    throw InvalidProblem("W bounds must satisfy 0 < lo <= hi");
  if (!(c.n_bounds.lo >= 1 && c.n_bounds.lo <= c.n_bounds.hi))
    throw InvalidProblem("n bounds must satisfy 1 <= lo <= hi");
  if (!ordered(c.alpha_bounds) || c.alpha_bounds.lo < kMinFoldAngle ||
      c.alpha_bounds.hi > std::numbers::pi)
    throw InvalidProblem("alpha bounds must satisfy 0 < lo <= hi <= 180 degrees");
  auto nonneg = [](const std::optional<double>& v) {
    return !v || (std::isfinite(*v) && *v >= 0.0);
  };
  if (!nonneg(c.fab_length) || !nonneg(c.folded_length_min) || !nonneg(c.folded_length_max) ||
      !nonneg(c.thickness_min) || !nonneg(c.thickness_max) || !nonneg(c.K_min) ||
      !nonneg(c.D_min))
    throw InvalidProblem("constraint values must be finite and non-negative");
  if (c.folded_length_min && c.folded_length_max && *c.folded_length_min > *c.folded_length_max)
    throw InvalidProblem("folded length bounds are inverted");
  if (c.thickness_min && c.thickness_max && *c.thickness_min > *c.thickness_max)
    throw InvalidProblem("folded thickness bounds are inverted");
  if (c.layout.kind == Layout::Kind::Circular &&
      !(std::isfinite(c.layout.radius) && c.layout.radius > 0.0))
    throw InvalidProblem("circular layout needs a positive radius");
  if (!std::isfinite(c.eta)) throw InvalidProblem("eta must be finite");
}

FeasibilityReport check_feasible(const DesignPoint& p, const Material& material,
                                 const DesignConstraints& c, const ModelOptions& model) {
  return assess(p, material, c, model, 0.0).report;
}

DesignSolution evaluate_design(const DesignPoint& p, const Material& material,
                               const DesignConstraints& c, const OptimizerSettings& s) {
  Assessment a = assess(p, material, c, s.model, s.connector_allowance);
  DesignSolution sol;
  sol.point = p;
  sol.K_eta = a.K_eta;
  sol.D_eta = a.D_eta;
  sol.mass = a.mass;
  sol.folded = {(p.n + 1) * p.W * std::sin(p.alpha / 2.0), 2.0 * p.W * std::cos(p.alpha / 2.0)};
  sol.feasibility = std::move(a.report);
  return sol;
}

DesignSolution optimize(const Material& material, const DesignConstraints& c,
                        const OptimizerSettings& s) {
  const auto start = std::chrono::steady_clock::now();
  validate(material);
  validate(c);
  if (!c.K_min && !c.D_min)
    throw InvalidProblem("at least one of K_min or D_min must be given");
  if (s.seed_W < 1 || s.seed_alpha < 1) throw InvalidProblem("seed grid must be at least 1x1");

  const IntRange viable = viable_n(c);
  const int n_lo = std::max(c.n_bounds.lo, viable.lo);
  const int n_hi = std::min(c.n_bounds.hi, viable.hi);
  const int count = std::max(0, n_hi - n_lo + 1);

  std::vector<SliceResult> slices(count);
  parallel_for(count, s.threads, [&](int i) { slices[i] = search_slice(n_lo + i, material, c, s); });

  Candidate best;
  Diagnostic diagnostic;
  long long evaluations = 0;
  for (const auto& slice : slices) {
    if (better(slice.best, best)) best = slice.best;
    diagnostic.merge(slice.diagnostic);
    evaluations += slice.evaluations;
  }

  if (!best.valid()) {
    // Pruned n values were skipped above; scan the whole box for the diagnostic.
    const int all = c.n_bounds.hi - c.n_bounds.lo + 1;
    std::vector<Diagnostic> diags(all);
    const auto Ws = axis(c.W_bounds.lo, c.W_bounds.hi, s.seed_W);
    const auto As = axis(c.alpha_bounds.lo, c.alpha_bounds.hi, s.seed_alpha);
    parallel_for(all, s.threads, [&](int i) {
      for (double W : Ws)
        for (double A : As) {
          const DesignPoint p{W, A, c.n_bounds.lo + i};
          diags[i].offer(p, assess(p, material, c, s.model, s.connector_allowance).report);
        }
    });
    for (const auto& d : diags) diagnostic.merge(d);
    throw_infeasible(diagnostic);
  }
  return finish(best, material, c, s, evaluations, start);
}

DesignSolution exhaustive_search(const Material& material, const DesignConstraints& c,
                                 const GridResolution& grid, const OptimizerSettings& s) {
  const auto start = std::chrono::steady_clock::now();
  validate(material);
  validate(c);
  if (!(grid.W_step > 0.0 && grid.alpha_step > 0.0 && std::isfinite(grid.W_step) &&
        std::isfinite(grid.alpha_step)))
    throw InvalidProblem("grid resolution must be positive");

  const auto Ws = stepped_axis(c.W_bounds.lo, c.W_bounds.hi, grid.W_step);
  const auto As = stepped_axis(c.alpha_bounds.lo, c.alpha_bounds.hi, grid.alpha_step);
  const int count = c.n_bounds.hi - c.n_bounds.lo + 1;

  std::vector<SliceResult> slices(count);
  parallel_for(count, s.threads, [&](int i) {
    const int n = c.n_bounds.lo + i;
    SliceResult& out = slices[i];
    for (double W : Ws)
      for (double A : As) {
        const DesignPoint p{W, A, n};
        ++out.evaluations;
        const Assessment a = assess(p, material, c, s.model, s.connector_allowance);
        out.diagnostic.offer(p, a.report);
        if (a.report.feasible) {
          const Candidate cand{a.mass, n, W, A};
          if (better(cand, out.best)) out.best = cand;
        }
      }
  });

  Candidate best;
  Diagnostic diagnostic;
  long long evaluations = 0;
  for (const auto& slice : slices) {
    if (better(slice.best, best)) best = slice.best;
    diagnostic.merge(slice.diagnostic);
    evaluations += slice.evaluations;
  }
  if (!best.valid()) throw_infeasible(diagnostic);
  return finish(best, material, c, s, evaluations, start);
}

std::vector<NaiveDesignRow> naive_designs_report(const Material& material,
                                                 const DesignConstraints& c,
                                                 const std::vector<DesignPoint>& candidates,
                                                 const OptimizerSettings& s) {
  if (candidates.empty()) throw InvalidProblem("candidate list is empty");
  std::vector<NaiveDesignRow> rows;
  rows.reserve(candidates.size());
  for (const auto& p : candidates) {
    Assessment a = assess(p, material, c, s.model, s.connector_allowance);
    rows.push_back({p, std::move(a.report), a.K_eta, a.D_eta, a.mass});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const NaiveDesignRow& a, const NaiveDesignRow& b) { return a.mass < b.mass; });
  return rows;
}

}  // namespace oadlc
