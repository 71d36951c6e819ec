#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ybx/tensor_core.hpp"

namespace ybx {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Streams are keyed by chunk index
/// in the samplers, so output does not depend on how chunks map to workers.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

/// Vector of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
inline StateVector complex_gaussian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  StateVector out(n);
  for (auto& z : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx(re, im);
  }
  return out;
}

/// Haar-random unit vector in C^n.
inline StateVector haar_state(std::size_t n, Rng& rng) {
  StateVector v = complex_gaussian(n, rng);
  const double nv = norm(v);
  for (auto& z : v) z /= nv;
  return v;
}

/// Haar-random n x n unitary: Gram-Schmidt on Gaussian columns. Keeping the
/// diagonal of R positive is what makes the measure Haar.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  std::vector<StateVector> cols(n);
  for (auto& c : cols) c = complex_gaussian(n, rng);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < k; ++m) {
      const cplx proj = inner(cols[m], cols[k]);
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= proj * cols[m][i];
    }
    const double nk = norm(cols[k]);
    for (auto& z : cols[k]) z /= nk;
  }
  ComplexMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
  }
  return u;
}

}  // namespace ybx
