#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace ybx {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Downhill simplex minimization with the usual coefficients
/// (reflect 1, expand 2, contract 1/2, shrink 1/2). `project` maps every
/// trial point back into the feasible set before it is evaluated.
template <class Objective, class Projection>
NelderMeadResult nelder_mead(Objective&& f, std::vector<double> start, double step,
                             int max_iterations, Projection&& project, double value_tol = 0.0) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += step;
  for (auto& p : simplex) project(p);
  std::vector<double> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) values[k] = f(simplex[k]);

  auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                   double coef) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coef * (worst[k] - centroid[k]);
    project(p);
    return p;
  };

  std::vector<std::size_t> order(n + 1);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (values[best] <= value_tol || values[worst] - values[best] <= 1e-300) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }

    auto reflected = point(centroid, simplex[worst], -1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      auto expanded = point(centroid, simplex[worst], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    auto contracted = point(centroid, outside ? reflected : simplex[worst], 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) {
        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
      }
      project(simplex[k]);
      values[k] = f(simplex[k]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

}  // namespace ybx
