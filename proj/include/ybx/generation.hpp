#pragma once

// Generation of two-qudit states as R(x) (|0>_A (x) |Phi>_B), the invariant
// region experiments comparing that family against random Schmidt spectra,
// and the inverse problem of finding (theta, phi) for a target spectrum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ybx/dimension.hpp"
#include "ybx/entanglement.hpp"
#include "ybx/error.hpp"
#include "ybx/nelder_mead.hpp"
#include "ybx/parallel.hpp"
#include "ybx/random.hpp"
#include "ybx/tensor_core.hpp"
#include "ybx/yang_baxter.hpp"

namespace ybx {

struct GenerationParams {
  Dimension d;
  /// Spectral angle, x = e^{i theta}.
  double theta = 0.0;
  /// d - 2 angles of the B-side product state, each in [0, pi/2].
  std::vector<double> phi;

  GenerationParams(Dimension dim, double angle, std::vector<double> phis = {})
      : d(dim), theta(angle), phi(std::move(phis)) {
    if (phi.size() != static_cast<std::size_t>(d.value() - 2)) {
      throw Error(ErrorCode::WrongAngleCount,
                  "d = " + std::to_string(d.value()) + " needs " +
                      std::to_string(d.value() - 2) + " phi angles, got " +
                      std::to_string(phi.size()));
    }
  }
};

/// cos phi_1 |0> + sin phi_1 cos phi_2 |1> + ... + sin phi_1 ... sin phi_{d-2} |d-2>.
/// The |d-1> component is always zero.
inline StateVector product_state(Dimension d, std::span<const double> phi) {
  if (phi.size() != static_cast<std::size_t>(d.value() - 2)) {
    throw Error(ErrorCode::WrongAngleCount,
                "d = " + std::to_string(d.value()) + " needs " + std::to_string(d.value() - 2) +
                    " phi angles, got " + std::to_string(phi.size()));
  }
  StateVector out(d.size());
  double tail = 1.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    out[k] = tail * std::cos(phi[k]);
    tail *= std::sin(phi[k]);
  }
  out[phi.size()] = tail;
  return out;
}

/// R(theta) applied to U_A|0>_A (x) |Phi(phi)>_B.
inline TwoQuditState generate(const RMatrixFamily& family, const GenerationParams& params,
                              const ComplexMatrix* u_a = nullptr) {
  const Dimension d = params.d;
  StateVector phi_a(d.size());
  if (u_a == nullptr) {
    phi_a[0] = 1.0;
  } else {
    if (u_a->rows() != d.size() || u_a->cols() != d.size()) {
      throw Error(ErrorCode::DimMismatch, "U_A must be d x d");
    }
    phi_a = u_a->column(0);
  }
  const StateVector input = kron(phi_a, product_state(d, params.phi));
  return {d, matvec(family.at(params.theta).matrix, input)};
}

inline TwoQuditState generate(const GenerationParams& params) {
  return generate(RMatrixFamily(params.d), params);
}

inline TwoQuditState generate(const GenerationParams& params, const ComplexMatrix& u_a) {
  return generate(RMatrixFamily(params.d), params, &u_a);
}

/// (1/d) {[(d-1)x + 1/x] |00> - (x - 1/x) sum_{j>=1} |jj>}, evaluated directly.
inline TwoQuditState closed_form_direct(Dimension d, double theta) {
  const cplx x = unit_phase(theta);
  const cplx x_inv = std::conj(x);
  const double dv = d.value();
  StateVector amps(d.pair_size());
  amps[0] = ((dv - 1.0) * x + x_inv) / dv;
  for (std::size_t j = 1; j < d.size(); ++j) amps[j * d.size() + j] = -(x - x_inv) / dv;
  return {d, std::move(amps)};
}

/// R(pi/3) applied to each of |00>, |01>, ..., |22>.
inline std::vector<TwoQuditState> maximally_entangled_basis() {
  const Dimension d(3);
  const ComplexMatrix r = r_matrix(d, std::numbers::pi / 3.0).matrix;
  std::vector<TwoQuditState> out;
  for (std::size_t k = 0; k < d.pair_size(); ++k) {
    StateVector e(d.pair_size());
    e[k] = 1.0;
    out.emplace_back(d, matvec(r, e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Region sampling

enum class Ensemble { Schmidt, YangBaxter };

inline std::string_view to_string(Ensemble e) { return e == Ensemble::Schmidt ? "schmidt" : "yb"; }

inline Ensemble parse_ensemble(std::string_view name) {
  if (name == "schmidt") return Ensemble::Schmidt;
  if (name == "yb") return Ensemble::YangBaxter;
  throw Error(ErrorCode::Parse, "unknown ensemble '" + std::string(name) + "'");
}

/// One point of a region experiment. Schmidt samples carry kappa and leave
/// theta/phi empty; Yang-Baxter samples carry theta/phi and leave kappa empty.
struct RegionSample {
  Ensemble source = Ensemble::Schmidt;
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> phi;
  std::vector<double> kappa;
  std::vector<double> iprime;
};

inline RegionSample yb_sample(const RMatrixFamily& family, const GenerationParams& params) {
  RegionSample s;
  s.source = Ensemble::YangBaxter;
  s.theta = canonical_angle(params.theta);
  s.phi = params.phi;
  s.iprime = invariants(generate(family, params)).Iprime;
  return s;
}

inline RegionSample schmidt_sample(Dimension d, std::vector<double> kappa) {
  RegionSample s;
  s.source = Ensemble::Schmidt;
  s.iprime = invariants_from_kappa(d, kappa).Iprime;
  s.kappa = std::move(kappa);
  return s;
}

/// n region samples, deterministic in (d, n, seed, ensemble) and independent
/// of the worker count: sample k always comes from the RNG stream of chunk
/// k / kChunkSize.
///
/// Schmidt: kappa = |z| / ||z|| for a standard complex Gaussian z.
/// Yang-Baxter: theta ~ U[0, 2 pi), phi_k ~ U[0, pi/2].
inline std::vector<RegionSample> sample_region(Dimension d, std::size_t n, std::uint64_t seed,
                                               Ensemble ensemble, unsigned workers = 1) {
  std::vector<RegionSample> out(n);
  const RMatrixFamily family(d);
  const std::uint64_t salt = ensemble == Ensemble::Schmidt ? 0 : 1;
  for_each_chunk(n, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = make_stream(seed, 2 * chunk + salt);
    if (ensemble == Ensemble::Schmidt) {
      for (std::size_t k = begin; k < end; ++k) {
        const StateVector z = complex_gaussian(d.size(), rng);
        const double nz = norm(z);
        std::vector<double> kappa(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) kappa[i] = std::abs(z[i]) / nz;
        out[k] = schmidt_sample(d, std::move(kappa));
      }
    } else {
      std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * std::numbers::pi);
      std::uniform_real_distribution<double> phi_dist(0.0, std::numbers::pi / 2.0);
      for (std::size_t k = begin; k < end; ++k) {
        const double theta = theta_dist(rng);
        std::vector<double> phi(d.size() - 2);
        for (double& p : phi) p = phi_dist(rng);
        out[k] = yb_sample(family, GenerationParams(d, theta, std::move(phi)));
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Two-qutrit boundary curves

/// O = separable, B = (|00> + |11>)/sqrt2, G = maximally entangled.
enum class Curve { OB, OG, GB };

inline std::string_view to_string(Curve c) {
  switch (c) {
    case Curve::OB: return "OB";
    case Curve::OG: return "OG";
    case Curve::GB: return "GB";
  }
  return "?";
}

inline Curve parse_curve(std::string_view name) {
  if (name == "OB") return Curve::OB;
  if (name == "OG") return Curve::OG;
  if (name == "GB") return Curve::GB;
  throw Error(ErrorCode::UnknownCurve, "unknown contour '" + std::string(name) + "'");
}

/// Angle at which cos xi |00> + sin xi (|11> + |22>)/sqrt2 becomes maximally
/// entangled: cos xi = 1/sqrt3.
inline double maximal_contour_angle() { return std::atan(std::numbers::sqrt2); }

/// Schmidt coefficients of the two boundary families at angle xi.
inline std::vector<double> contour_kappa(Curve c, double xi) {
  if (c == Curve::OB) return {std::cos(xi), std::sin(xi), 0.0};
  const double s = std::sin(xi) / std::numbers::sqrt2;
  return {std::cos(xi), s, s};
}

/// xi range of each curve. OB: cos xi |00> + sin xi |11> on [0, pi/2];
/// OG and GB split the second family at maximal_contour_angle().
inline std::pair<double, double> contour_range(Curve c) {
  switch (c) {
    case Curve::OB: return {0.0, std::numbers::pi / 4.0};
    case Curve::OG: return {0.0, maximal_contour_angle()};
    case Curve::GB: return {maximal_contour_angle(), std::numbers::pi / 2.0};
  }
  return {0.0, 0.0};
}

struct ContourPoint {
  Curve curve;
  double xi;
  std::vector<double> iprime;
};

inline std::vector<ContourPoint> contour_curve(Curve c, std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::IndexOutOfRange, "contour needs at least 2 steps");
  const Dimension d(3);
  const auto [lo, hi] = contour_range(c);
  std::vector<ContourPoint> out;
  out.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double xi =
        k + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
    out.push_back({c, xi, invariants_from_kappa(d, contour_kappa(c, xi)).Iprime});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coverage

struct CoverageReport {
  int grid_resolution = 0;
  std::size_t bins_target = 0;
  std::size_t bins_covered = 0;
  double coverage = 0.0;
  std::pair<std::size_t, std::size_t> sample_counts{0, 0};
  /// Per-axis bin indices of target bins that no generated sample reached.
  std::vector<std::vector<int>> uncovered;
};

namespace detail {

inline std::vector<std::uint64_t> occupied_bins(std::span<const RegionSample> samples, int grid) {
  std::vector<std::uint64_t> ids;
  ids.reserve(samples.size());
  for (const auto& s : samples) {
    std::uint64_t id = 0;
    for (auto it = s.iprime.rbegin(); it != s.iprime.rend(); ++it) {
      const int b = std::clamp(static_cast<int>(std::floor(*it * grid)), 0, grid - 1);
      id = id * static_cast<std::uint64_t>(grid) + static_cast<std::uint64_t>(b);
    }
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace detail

/// Splits [0, 1]^{d-1} into grid^{d-1} bins and reports the fraction of bins
/// hit by `target` that are also hit by `generated`.
inline CoverageReport coverage_report(std::span<const RegionSample> target,
                                      std::span<const RegionSample> generated, int grid) {
  if (target.empty() || generated.empty()) {
    throw Error(ErrorCode::EmptyEnsemble, "coverage needs non-empty target and generated sets");
  }
  if (grid < 1) throw Error(ErrorCode::IndexOutOfRange, "grid resolution must be positive");
  const std::size_t axes = target.front().iprime.size();
  for (auto set : {target, generated}) {
    for (const auto& s : set) {
      if (s.iprime.size() != axes) {
        throw Error(ErrorCode::DimMismatch, "region samples of different dimensions");
      }
    }
  }

  const auto target_bins = detail::occupied_bins(target, grid);
  const auto generated_bins = detail::occupied_bins(generated, grid);
  std::vector<std::uint64_t> missing;
  std::set_difference(target_bins.begin(), target_bins.end(), generated_bins.begin(),
                      generated_bins.end(), std::back_inserter(missing));

  CoverageReport report;
  report.grid_resolution = grid;
  report.bins_target = target_bins.size();
  report.bins_covered = target_bins.size() - missing.size();
  report.coverage =
      static_cast<double>(report.bins_covered) / static_cast<double>(report.bins_target);
  report.sample_counts = {target.size(), generated.size()};
  for (std::uint64_t id : missing) {
    std::vector<int> idx(axes);
    for (auto& v : idx) {
      v = static_cast<int>(id % static_cast<std::uint64_t>(grid));
      id /= static_cast<std::uint64_t>(grid);
    }
    report.uncovered.push_back(std::move(idx));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Inverse problem

/// Upper bound on coarse-grid points; the per-axis count shrinks to fit.
inline constexpr double kMaxSolverGrid = 16777216.0;

struct SolverBudget {
  /// Coarse grid points per parameter axis.
  int grid_points = 64;
  int simplex_iterations = 500;
  int restarts = 5;
};

struct SolveResult {
  GenerationParams params;
  /// max_k |kappa_k(generated) - target_k|
  double residual;
};

/// Raised when no restart reaches the tolerance. Carries the best point found.
class NoSolutionFound : public Error {
 public:
  NoSolutionFound(GenerationParams best, double residual)
      : Error(ErrorCode::NoSolutionFound,
              "best Schmidt residual " + std::to_string(residual) + " above tolerance"),
        best_(std::move(best)),
        residual_(residual) {}

  const GenerationParams& best() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  GenerationParams best_;
  double residual_;
};

/// Finds (theta, phi) whose generated state has the target Schmidt spectrum.
///
/// Coarse grid over theta in [0, pi/2] and each phi in [0, pi/2], then
/// Nelder-Mead on sum_k (kappa_k - target_k)^2 from the best grid points.
/// Restricting theta loses nothing: R(theta + pi) = -R(theta) and, since M
/// and the input are real, R(-theta)|in> = conj(R(theta)|in>), both of which
/// leave the spectrum unchanged.
inline SolveResult solve_parameters(Dimension d, std::span<const double> target_kappa,
                                    double tol, const SolverBudget& budget = {}) {
  if (target_kappa.size() != d.size()) {
    throw Error(ErrorCode::DimMismatch, "target needs " + std::to_string(d.value()) +
                                            " Schmidt coefficients");
  }
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < target_kappa.size(); ++k) {
    if (target_kappa[k] < 0.0 || (k > 0 && target_kappa[k] > target_kappa[k - 1])) {
      throw Error(ErrorCode::Parse, "target Schmidt coefficients must be non-negative and descending");
    }
    sum_sq += target_kappa[k] * target_kappa[k];
  }
  if (std::abs(sum_sq - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized,
                "target Schmidt coefficients have sum of squares " + std::to_string(sum_sq));
  }

  const RMatrixFamily family(d);
  const std::size_t dims = d.size() - 1;
  const double half_pi = std::numbers::pi / 2.0;
  auto to_params = [&](const std::vector<double>& v) {
    return GenerationParams(d, v[0], std::vector<double>(v.begin() + 1, v.end()));
  };
  auto spectrum_of = [&](const std::vector<double>& v) {
    return schmidt_coefficients(generate(family, to_params(v)));
  };
  auto objective = [&](const std::vector<double>& v) {
    const auto kappa = spectrum_of(v);
    double acc = 0.0;
    for (std::size_t k = 0; k < kappa.size(); ++k) {
      const double diff = kappa[k] - target_kappa[k];
      acc += diff * diff;
    }
    return acc;
  };
  auto max_deviation = [&](const std::vector<double>& v) {
    const auto kappa = spectrum_of(v);
    double worst = 0.0;
    for (std::size_t k = 0; k < kappa.size(); ++k) {
      worst = std::max(worst, std::abs(kappa[k] - target_kappa[k]));
    }
    return worst;
  };
  auto project = [&](std::vector<double>& v) {
    v[0] = std::clamp(v[0], 0.0, half_pi);
    for (std::size_t k = 1; k < v.size(); ++k) v[k] = std::clamp(v[k], 0.0, half_pi);
  };

  // Coarse grid. Restarts begin at the best grid-local minima (no axis
  // neighbour lower), so they land in distinct basins; if there are fewer
  // minima than restarts, the best remaining grid points fill in.
  std::size_t n_axis = static_cast<std::size_t>(std::max(2, budget.grid_points));
  while (n_axis > 2 && std::pow(static_cast<double>(n_axis), static_cast<double>(dims)) > kMaxSolverGrid) {
    --n_axis;
  }
  const double spacing = half_pi / static_cast<double>(n_axis - 1);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dims; ++k) total *= n_axis;
  std::vector<double> values(total);
  std::vector<double> v(dims);
  auto point_of = [&](std::size_t flat) {
    for (std::size_t k = dims; k-- > 0;) {
      v[k] = static_cast<double>(flat % n_axis) * spacing;
      flat /= n_axis;
    }
    return v;
  };
  for (std::size_t flat = 0; flat < total; ++flat) values[flat] = objective(point_of(flat));

  auto is_local_min = [&](std::size_t flat) {
    std::size_t stride = 1;
    for (std::size_t k = dims; k-- > 0;) {
      const std::size_t i = (flat / stride) % n_axis;
      if (i > 0 && values[flat - stride] < values[flat]) return false;
      if (i + 1 < n_axis && values[flat + stride] < values[flat]) return false;
      stride *= n_axis;
    }
    return true;
  };
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  const auto keep = static_cast<std::size_t>(std::max(1, budget.restarts));
  std::vector<std::vector<double>> starts;
  std::vector<std::size_t> fallback;
  for (std::size_t flat : order) {
    if (starts.size() == keep) break;
    if (is_local_min(flat)) {
      starts.push_back(point_of(flat));
    } else if (fallback.size() < keep) {
      fallback.push_back(flat);
    }
  }
  for (std::size_t k = 0; starts.size() < keep && k < fallback.size(); ++k) {
    starts.push_back(point_of(fallback[k]));
  }

  std::vector<double> best_point = point_of(order.front());
  double best_residual = max_deviation(best_point);
  auto finish = [&](std::vector<double> p) {
    GenerationParams params = to_params(p);
    params.theta = canonical_angle(params.theta);
    return SolveResult{std::move(params), max_deviation(p)};
  };
  if (best_residual <= tol) return finish(best_point);

  const double value_tol = 1e-4 * tol * tol;
  for (const auto& start : starts) {
    const auto result =
        nelder_mead(objective, start, spacing, budget.simplex_iterations, project, value_tol);
    const double residual = max_deviation(result.x);
    if (residual < best_residual) {
      best_residual = residual;
      best_point = result.x;
    }
    if (best_residual <= tol) return finish(best_point);
  }
  GenerationParams params = to_params(best_point);
  params.theta = canonical_angle(params.theta);
  throw NoSolutionFound(std::move(params), best_residual);
}

}  // namespace ybx
