#ifndef OADLC_SIMPLEX_HPP
#define OADLC_SIMPLEX_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace oadlc {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
};

struct SimplexOptions {
  double initial_step = 0.05;
  double relative_tolerance = 1e-10;
  double min_diameter = 1e-14;
  int max_iterations = 2000;
};

/// Nelder-Mead downhill simplex. `f` may return +infinity to reject a point
/// (extreme barrier); the simplex then contracts away from it.
///
/// The returned point is always the best vertex ever evaluated, so a barrier
/// objective never yields a rejected point as long as `x0` was accepted.
template <std::size_t N, class F>
SimplexResult<N> simplex_minimize(F&& f, const std::array<double, N>& x0,
                                  const SimplexOptions& opt = {}) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  using Point = std::array<double, N>;
  std::array<Point, N + 1> v{};
  std::array<double, N + 1> fv{};
  SimplexResult<N> out;

  auto eval = [&](const Point& p) {
    ++out.evaluations;
    return f(p);
  };

  v[0] = x0;
  fv[0] = eval(x0);
  for (std::size_t i = 0; i < N; ++i) {
    v[i + 1] = x0;
    v[i + 1][i] += opt.initial_step;
    fv[i + 1] = eval(v[i + 1]);
  }

  std::array<std::size_t, N + 1> order{};
  auto affine = [](const Point& a, const Point& b, double s) {
    Point p{};
    for (std::size_t i = 0; i < N; ++i) p[i] = a[i] + s * (b[i] - a[i]);
    return p;
  };

  for (; out.iterations < opt.max_iterations; ++out.iterations) {
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    // Stable on equal values so the walk is reproducible.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[N];
    const std::size_t second = order[N - 1];

    double diameter = 0.0;
    for (std::size_t k = 1; k <= N; ++k)
      for (std::size_t i = 0; i < N; ++i)
        diameter = std::max(diameter, std::abs(v[order[k]][i] - v[best][i]));
    const double spread = fv[worst] - fv[best];
    if (std::isfinite(spread) &&
        spread <= opt.relative_tolerance * std::max(std::abs(fv[best]), 1e-300))
      break;
    if (diameter < opt.min_diameter) break;

    Point centroid{};
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < N; ++i) centroid[i] += v[order[k]][i] / static_cast<double>(N);

    const Point reflected = affine(centroid, v[worst], -kReflect);
    const double fr = eval(reflected);
    if (fr < fv[best]) {
      const Point expanded = affine(centroid, v[worst], -kExpand);
      const double fe = eval(expanded);
      if (fe < fr) {
        v[worst] = expanded;
        fv[worst] = fe;
      } else {
        v[worst] = reflected;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = reflected;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const Point contracted =
        outside ? affine(centroid, reflected, kContract) : affine(centroid, v[worst], kContract);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : fv[worst])) {
      v[worst] = contracted;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= N; ++k) {
      const std::size_t idx = order[k];
      v[idx] = affine(v[best], v[idx], kShrink);
      fv[idx] = eval(v[idx]);
    }
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k <= N; ++k)
    if (fv[k] < fv[best]) best = k;
  out.x = v[best];
  out.value = fv[best];
  return out;
}

}  // namespace oadlc

#endif  // OADLC_SIMPLEX_HPP
