// Builds the nine maximally entangled two-qutrit states R(pi/3)|ij> and
// prints their amplitudes, concurrences and the worst Gram-matrix deviation.

#include <cstdio>
#include <numbers>

#include "ybx/ybx.hpp"

int main() {
  const auto basis = ybx::maximally_entangled_basis();
  double worst_gram = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto& s = basis[a];
    std::printf("|%zu%zu> ->", a / 3, a % 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const ybx::cplx z = s.amplitude(i, j);
        if (std::abs(z) > 1e-12) std::printf("  (%+.6f%+.6fi)|%zu%zu>", z.real(), z.imag(), i, j);
      }
    }
    std::printf("   C = %.12g\n", ybx::invariants(s).concurrence);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double expected = a == b ? 1.0 : 0.0;
      worst_gram = std::max(worst_gram, std::abs(ybx::inner(s.vector(), basis[b].vector()) - expected));
    }
  }
  std::printf("max |<a|b> - delta_ab| = %.3g\n", worst_gram);
  return worst_gram <= 1e-12 ? 0 : 1;
}
