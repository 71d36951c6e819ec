#pragma once

// Two-qudit pure states, Schmidt decomposition and the entanglement
// invariants I_j = Tr[rho_A^{j+1}], their normalized forms I'_j and the
// generalized concurrence.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ybx/dimension.hpp"
#include "ybx/error.hpp"
#include "ybx/tensor_core.hpp"

namespace ybx {

inline constexpr double kNormalizationTol = 1e-12;

/// Pure state sum_ij mu_ij |i>_A |j>_B, amplitude mu_ij stored at index i*d + j.
class TwoQuditState {
 public:
  TwoQuditState(Dimension d, StateVector amplitudes, double tol = kNormalizationTol)
      : d_(d), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != d_.pair_size()) {
      throw Error(ErrorCode::DimMismatch, "two-qudit state for d = " + std::to_string(d.value()) +
                                              " needs " + std::to_string(d_.pair_size()) +
                                              " amplitudes, got " +
                                              std::to_string(amplitudes_.size()));
    }
    const double n = norm(amplitudes_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
      throw Error(ErrorCode::NotNormalized, "state norm is " + std::to_string(n));
    }
  }

  /// |i>_A |j>_B
  static TwoQuditState basis(Dimension d, std::size_t i, std::size_t j) {
    StateVector amps(d.pair_size());
    amps.at(i * d.size() + j) = 1.0;
    return {d, std::move(amps)};
  }

  Dimension dimension() const noexcept { return d_; }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  const StateVector& vector() const noexcept { return amplitudes_; }
  cplx amplitude(std::size_t i, std::size_t j) const { return amplitudes_[i * d_.size() + j]; }

  /// The d x d coefficient matrix mu with rows indexed by A and columns by B.
  ComplexMatrix coefficients() const { return {d_.size(), d_.size(), amplitudes_}; }

 private:
  Dimension d_;
  StateVector amplitudes_;
};

enum class Side { A, B };

/// rho_A[i, i'] = sum_j mu_ij conj(mu_i'j); rho_B analogous over i.
inline ComplexMatrix reduced_density(const TwoQuditState& state, Side side) {
  const std::size_t d = state.dimension().size();
  ComplexMatrix rho(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      cplx acc{};
      for (std::size_t k = 0; k < d; ++k) {
        acc += side == Side::A ? state.amplitude(a, k) * std::conj(state.amplitude(b, k))
                               : state.amplitude(k, a) * std::conj(state.amplitude(k, b));
      }
      rho(a, b) = acc;
    }
  }
  return rho;
}

struct SchmidtDecomposition {
  /// Descending, non-negative, sum of squares 1.
  std::vector<double> kappa;
  /// Column k is the A-side Schmidt vector for kappa[k].
  ComplexMatrix local_A;
  /// Column k is the B-side Schmidt vector for kappa[k].
  ComplexMatrix local_B;

  /// (local_A (x) local_B) sum_k kappa_k |kk>
  StateVector reassemble() const {
    const std::size_t d = kappa.size();
    StateVector out(d * d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          out[i * d + j] += kappa[k] * local_A(i, k) * local_B(j, k);
        }
      }
    }
    return out;
  }
};

/// Schmidt form from the eigensystem of rho_A.
///
/// With u_k the eigenvectors of rho_A, the B-side vectors are
/// w_k = mu^T conj(u_k) and kappa_k = ||w_k||. Taking the norm rather than
/// sqrt(lambda_k) keeps small coefficients accurate. Columns whose kappa is
/// below 1e-10 are completed by Gram-Schmidt, which bounds the reassembly
/// error by 2e-10 per dropped column.
inline SchmidtDecomposition schmidt_decompose(const TwoQuditState& state) {
  const std::size_t d = state.dimension().size();
  const Eigensystem eig = hermitian_eigensystem(reduced_density(state, Side::A));

  std::vector<StateVector> w(d, StateVector(d));
  std::vector<double> kappa(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc{};
      for (std::size_t i = 0; i < d; ++i) acc += state.amplitude(i, j) * std::conj(eig.vectors(i, k));
      w[k][j] = acc;
    }
    kappa[k] = norm(w[k]);
  }

  std::vector<std::size_t> order(d);
  for (std::size_t k = 0; k < d; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return kappa[a] > kappa[b]; });

  constexpr double kDropBelow = 1e-10;
  SchmidtDecomposition out{std::vector<double>(d), ComplexMatrix(d, d), ComplexMatrix(d, d)};
  std::vector<StateVector> b_cols;
  for (std::size_t slot = 0; slot < d; ++slot) {
    const std::size_t k = order[slot];
    out.kappa[slot] = kappa[k];
    for (std::size_t i = 0; i < d; ++i) out.local_A(i, slot) = eig.vectors(i, k);
    if (kappa[k] > kDropBelow) {
      StateVector v = w[k];
      for (auto& z : v) z /= kappa[k];
      b_cols.push_back(std::move(v));
    }
  }

  // Orthonormalize the kept columns, then complete with standard basis vectors.
  std::vector<StateVector> basis;
  auto try_add = [&](StateVector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) {
        const cplx proj = inner(e, v);
        for (std::size_t i = 0; i < d; ++i) v[i] -= proj * e[i];
      }
    }
    const double nv = norm(v);
    if (nv < 1e-8) return false;
    for (auto& z : v) z /= nv;
    basis.push_back(std::move(v));
    return true;
  };
  for (auto& v : b_cols) try_add(std::move(v));
  for (std::size_t e = 0; e < d && basis.size() < d; ++e) {
    StateVector unit(d);
    unit[e] = 1.0;
    try_add(std::move(unit));
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) out.local_B(j, k) = basis[k][j];
  }
  return out;
}

struct InvariantVector {
  int d = 0;
  /// I_j = Tr[rho_A^{j+1}] for j = 1..d-1 (stored at index j-1).
  std::vector<double> I;
  /// I'_j = d^j / (d^j - 1) (1 - I_j), each in [0, 1].
  std::vector<double> Iprime;
  /// sqrt(d / (d-1) (1 - I_1)).
  double concurrence = 0.0;
};

/// Invariants from the spectrum of rho_A (lambda_k = kappa_k^2).
inline InvariantVector invariants_from_spectrum(Dimension d, std::span<const double> lambda) {
  if (lambda.size() != d.size()) {
    throw Error(ErrorCode::DimMismatch, "spectrum length " + std::to_string(lambda.size()) +
                                            " for d = " + std::to_string(d.value()));
  }
  const int dv = d.value();
  InvariantVector out;
  out.d = dv;
  out.I.resize(static_cast<std::size_t>(dv - 1));
  out.Iprime.resize(out.I.size());
  for (int j = 1; j < dv; ++j) {
    double acc = 0.0;
    for (double l : lambda) acc += std::pow(std::max(l, 0.0), j + 1);
    const double dj = std::pow(static_cast<double>(dv), j);
    out.I[static_cast<std::size_t>(j - 1)] = acc;
    out.Iprime[static_cast<std::size_t>(j - 1)] = dj / (dj - 1.0) * (1.0 - acc);
  }
  out.concurrence = std::sqrt(std::max(0.0, dv / (dv - 1.0) * (1.0 - out.I[0])));
  return out;
}

inline InvariantVector invariants_from_kappa(Dimension d, std::span<const double> kappa) {
  std::vector<double> lambda(kappa.size());
  std::transform(kappa.begin(), kappa.end(), lambda.begin(), [](double k) { return k * k; });
  return invariants_from_spectrum(d, lambda);
}

/// Eigenvalues of rho_A, descending and clamped at zero.
inline std::vector<double> reduced_spectrum(const TwoQuditState& state) {
  std::vector<double> lambda = hermitian_eigensystem(reduced_density(state, Side::A)).values;
  for (double& l : lambda) l = std::max(l, 0.0);
  return lambda;
}

/// Sorted Schmidt coefficients kappa_k = sqrt(lambda_k).
inline std::vector<double> schmidt_coefficients(const TwoQuditState& state) {
  std::vector<double> kappa = reduced_spectrum(state);
  for (double& k : kappa) k = std::sqrt(k);
  return kappa;
}

inline InvariantVector invariants(const TwoQuditState& state) {
  return invariants_from_spectrum(state.dimension(), reduced_spectrum(state));
}

/// |sin 2 theta|: the concurrence of R(theta)|00> for qubits.
inline double concurrence_closed_d2(double theta) { return std::abs(std::sin(2.0 * theta)); }

/// Smallest theta in (0, pi] with cos 2 theta = 1 - d/2, where R(theta)|00>
/// is maximally entangled. Empty for d >= 5.
inline std::optional<double> max_entanglement_angle(Dimension d) {
  const double c = 1.0 - d.value() / 2.0;
  if (std::abs(c) > 1.0) return std::nullopt;
  return std::acos(c) / 2.0;
}

}  // namespace ybx
