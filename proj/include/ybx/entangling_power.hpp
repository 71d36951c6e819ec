#pragma once

// Entangling power of a two-qudit unitary: Monte-Carlo average of the output
// entanglement over Haar product inputs, and the closed form through operator
// linear entropies.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ybx/dimension.hpp"
#include "ybx/entanglement.hpp"
#include "ybx/error.hpp"
#include "ybx/parallel.hpp"
#include "ybx/random.hpp"
#include "ybx/tensor_core.hpp"

namespace ybx {

struct EntanglingPowerEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  /// 1 is the standard power built on 1 - Tr rho_A^2; j >= 2 uses I'_j.
  int j = 1;
};

/// d such that U is d^2 x d^2.
inline Dimension pair_dimension(const ComplexMatrix& u) {
  if (!u.is_square()) throw Error(ErrorCode::DimMismatch, "two-qudit operator must be square");
  const auto d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(u.rows()))));
  if (static_cast<std::size_t>(d * d) != u.rows()) {
    throw Error(ErrorCode::DimMismatch,
                std::to_string(u.rows()) + " is not the square of a qudit dimension");
  }
  return Dimension(d);
}

/// S|ij> = |ji>.
inline ComplexMatrix swap_matrix(Dimension d) {
  const std::size_t n = d.size();
  ComplexMatrix s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  }
  return s;
}

/// |Phi_A> (x) |Phi_B>, each factor Haar-random.
inline TwoQuditState haar_product_state(Dimension d, Rng& rng) {
  const StateVector a = haar_state(d.size(), rng);
  const StateVector b = haar_state(d.size(), rng);
  StateVector v = kron(a, b);
  const double nv = norm(v);
  for (auto& z : v) z /= nv;
  return {d, std::move(v)};
}

/// E_1 = 1 - Tr rho_A^2; E_j = I'_j = d^j/(d^j - 1) (1 - Tr rho_A^{j+1}) for j >= 2.
inline double entanglement_order(const TwoQuditState& state, int j) {
  const ComplexMatrix rho = reduced_density(state, Side::A);
  ComplexMatrix power = rho;
  for (int k = 0; k < j; ++k) power = power * rho;
  const double tr = trace(power).real();
  if (j == 1) return 1.0 - tr;
  const double dj = std::pow(static_cast<double>(state.dimension().value()), j);
  return dj / (dj - 1.0) * (1.0 - tr);
}

inline void require_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  const double r = unitarity_residual(u);
  if (r > tol) {
    throw Error(ErrorCode::NotUnitary, "||U U^dagger - 1||_max = " + std::to_string(r));
  }
}

/// Monte-Carlo entangling power with std_error = sample std / sqrt(n).
/// Deterministic in (U, j, n, seed) regardless of `workers`.
inline EntanglingPowerEstimate entangling_power_mc(const ComplexMatrix& u, int j, std::size_t n,
                                                   std::uint64_t seed, unsigned workers = 1) {
  const Dimension d = pair_dimension(u);
  require_unitary(u);
  if (j < 1 || j >= d.value()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "invariant order j must lie in [1, " + std::to_string(d.value() - 1) + "]");
  }
  if (n == 0) throw Error(ErrorCode::EmptyEnsemble, "need at least one sample");

  struct Partial {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<Partial> partials(chunk_count(n));
  for_each_chunk(n, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = make_stream(seed, chunk);
    Partial p;
    for (std::size_t k = begin; k < end; ++k) {
      const TwoQuditState in = haar_product_state(d, rng);
      const double e = entanglement_order(TwoQuditState(d, matvec(u, in.vector()), 1e-9), j);
      ++p.count;
      const double delta = e - p.mean;
      p.mean += delta / static_cast<double>(p.count);
      p.m2 += delta * (e - p.mean);
    }
    partials[chunk] = p;
  });

  // Chan et al. pairwise merge, in chunk order.
  Partial total;
  for (const auto& p : partials) {
    if (p.count == 0) continue;
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(p.count);
    const double delta = p.mean - total.mean;
    const double nt = na + nb;
    total.mean += delta * nb / nt;
    total.m2 += p.m2 + delta * delta * na * nb / nt;
    total.count += p.count;
  }
  EntanglingPowerEstimate out;
  out.mean = total.mean;
  out.n_samples = total.count;
  out.j = j;
  const double var = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  out.std_error = std::sqrt(var / static_cast<double>(total.count));
  return out;
}

/// Operator linear entropy of U seen as the normalized vector U/d in the
/// (A A' | B B') split: 1 - Tr[(W W^dagger)^2] / d^4 with
/// W_{(i,k),(j,l)} = U_{(i d + j),(k d + l)}.
inline double operator_linear_entropy(const ComplexMatrix& u) {
  const Dimension d = pair_dimension(u);
  const std::size_t n = d.size();
  ComplexMatrix w(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) w(i * n + k, j * n + l) = u(i * n + j, k * n + l);
      }
    }
  }
  const ComplexMatrix ww = w * adjoint(w);
  const double purity = trace(ww * ww).real();
  const double d4 = std::pow(static_cast<double>(n), 4);
  return 1.0 - purity / d4;
}

/// (d/(d+1))^2 [E(U) + E(U S) - E(S)].
inline double entangling_power_closed(const ComplexMatrix& u) {
  const Dimension d = pair_dimension(u);
  require_unitary(u);
  const ComplexMatrix s = swap_matrix(d);
  const double dv = d.value();
  const double pre = (dv / (dv + 1.0)) * (dv / (dv + 1.0));
  return pre * (operator_linear_entropy(u) + operator_linear_entropy(u * s) -
                operator_linear_entropy(s));
}

}  // namespace ybx
