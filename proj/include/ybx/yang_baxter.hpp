#pragma once

// Universal unitary Yang-Baxter gate for two qudits built from circulation
// matrices, together with residual checks for every algebraic relation the
// construction relies on.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ybx/dimension.hpp"
#include "ybx/error.hpp"
#include "ybx/tensor_core.hpp"

namespace ybx {

/// Constants of M^2 = alpha M + beta 1 and the braid relation with coupling g.
struct HeckeConstants {
  double alpha;
  double beta;
  double g;

  static HeckeConstants of(Dimension d) {
    const double dv = d.value();
    return {dv - 2.0, dv - 1.0, dv - 1.0};
  }
};

struct WeightPair {
  cplx F;
  cplx G;
  /// Set when |(d-1)x + 1/x| < 1e-12; G is then not finite and R cannot be
  /// written as F (1 + G M).
  bool singular = false;
};

/// Maps any angle onto [0, 2 pi).
inline double canonical_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

/// x = e^{i theta}. Exactly (1, 0) at theta = 0.
inline cplx unit_phase(double theta) {
  const double t = canonical_angle(theta);
  return {std::cos(t), std::sin(t)};
}

/// P_r = sum_i |i><(i + r) mod d|, with exact integer entries.
inline IntMatrix circulation_matrix_exact(Dimension d, int r) {
  if (r < 0 || r >= d.value()) {
    throw Error(ErrorCode::IndexOutOfRange, "circulation index r = " + std::to_string(r) +
                                                " outside [0, " + std::to_string(d.value()) +
                                                ")");
  }
  const std::size_t n = d.size();
  IntMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, (i + static_cast<std::size_t>(r)) % n) = 1;
  return p;
}

inline ComplexMatrix circulation_matrix(Dimension d, int r) {
  return to_complex(circulation_matrix_exact(d, r));
}

/// Single-qudit transposition of basis states |k> and |k+1>.
inline IntMatrix adjacent_transposition(Dimension d, int k) {
  if (k < 0 || k + 1 >= d.value()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "transposition (" + std::to_string(k) + ", " + std::to_string(k + 1) +
                    ") outside a " + std::to_string(d.value()) + "-level qudit");
  }
  IntMatrix t = IntMatrix::identity(d.size());
  const auto a = static_cast<std::size_t>(k);
  t(a, a) = 0;
  t(a + 1, a + 1) = 0;
  t(a, a + 1) = 1;
  t(a + 1, a) = 1;
  return t;
}

/// Factors P_1 into adjacent transpositions. The list reads left to right as
/// a matrix product: P_{d-2,d-1} ... P_{1,2} P_{0,1} = P_1.
inline std::vector<IntMatrix> adjacent_transposition_product(Dimension d) {
  std::vector<IntMatrix> factors;
  for (int k = d.value() - 2; k >= 0; --k) factors.push_back(adjacent_transposition(d, k));
  return factors;
}

/// M = sum_{r=1}^{d-1} P_r (x) P_r.
inline IntMatrix m_matrix_exact(Dimension d) {
  IntMatrix m(d.pair_size(), d.pair_size());
  for (int r = 1; r < d.value(); ++r) {
    const IntMatrix p = circulation_matrix_exact(d, r);
    m += kron(p, p);
  }
  return m;
}

inline ComplexMatrix m_matrix(Dimension d) { return to_complex(m_matrix_exact(d)); }

inline WeightPair weight_functions(Dimension d, double theta) {
  const cplx x = unit_phase(theta);
  const cplx x_inv = std::conj(x);
  const double dv = d.value();
  const cplx denom = (dv - 1.0) * x + x_inv;
  WeightPair w;
  w.F = denom / dv;
  w.singular = std::abs(denom) < 1e-12;
  w.G = w.singular ? cplx(std::numeric_limits<double>::infinity(), 0.0) : -(x - x_inv) / denom;
  return w;
}

/// |G(x) + G(y) + alpha G(x) G(y) - [1 + g G(x) G(y)] G(xy)|.
inline double functional_equation_residual(Dimension d, double theta_x, double theta_y) {
  const auto h = HeckeConstants::of(d);
  const cplx gx = weight_functions(d, theta_x).G;
  const cplx gy = weight_functions(d, theta_y).G;
  const cplx gxy = weight_functions(d, theta_x + theta_y).G;
  return std::abs(gx + gy + h.alpha * gx * gy - (1.0 + h.g * gx * gy) * gxy);
}

struct WeightUnitarityResiduals {
  /// |G(x) + G(1/x) + alpha G(x) G(1/x)|
  double g_relation;
  /// |F(x) F(1/x) [1 + beta G(x) G(1/x)] - 1|
  double f_relation;
};

inline WeightUnitarityResiduals weight_unitarity_residuals(Dimension d, double theta) {
  const auto h = HeckeConstants::of(d);
  const WeightPair w = weight_functions(d, theta);
  const WeightPair w_inv = weight_functions(d, -theta);
  return {std::abs(w.G + w_inv.G + h.alpha * w.G * w_inv.G),
          std::abs(w.F * w_inv.F * (1.0 + h.beta * w.G * w_inv.G) - 1.0)};
}

/// R(x) for a fixed d and angle. theta is stored canonicalized to [0, 2 pi).
struct YangBaxterGate {
  Dimension d;
  double theta;
  ComplexMatrix matrix;
};

/// R(x) = (1/d) {[(d-1)x + 1/x] 1 - (x - 1/x) M}.
///
/// Built from the expanded form rather than F (1 + G M), which is 0 * inf
/// wherever (d-1)x + 1/x vanishes (d = 2, theta = pi/2 for instance).
/// Holds M so that repeated evaluation in samplers skips the kron products.
class RMatrixFamily {
 public:
  explicit RMatrixFamily(Dimension d) : d_(d), m_(m_matrix_exact(d)) {}

  Dimension dimension() const noexcept { return d_; }

  YangBaxterGate at(double theta) const {
    const double t = canonical_angle(theta);
    const cplx x = unit_phase(t);
    const cplx x_inv = std::conj(x);
    const double dv = d_.value();
    const cplx diag = ((dv - 1.0) * x + x_inv) / dv;
    const cplx off = -(x - x_inv) / dv;

    ComplexMatrix r(m_.rows(), m_.cols());
    for (std::size_t i = 0; i < m_.rows(); ++i) {
      r(i, i) = diag;
      for (std::size_t j = 0; j < m_.cols(); ++j) {
        if (m_(i, j) != 0) r(i, j) += off * static_cast<double>(m_(i, j));
      }
    }
    return {d_, t, std::move(r)};
  }

 private:
  Dimension d_;
  IntMatrix m_;
};

inline YangBaxterGate r_matrix(Dimension d, double theta) { return RMatrixFamily(d).at(theta); }

/// ||R1(x) R2(xy) R1(y) - R2(y) R1(xy) R2(x)||_max on three qudits, with
/// R1 = R (x) 1 and R2 = 1 (x) R.
inline double ybe_residual(Dimension d, double theta_x, double theta_y) {
  const ComplexMatrix id = ComplexMatrix::identity(d.size());
  auto site1 = [&](double t) { return kron(r_matrix(d, t).matrix, id); };
  auto site2 = [&](double t) { return kron(id, r_matrix(d, t).matrix); };
  const double theta_xy = theta_x + theta_y;
  const ComplexMatrix lhs = site1(theta_x) * site2(theta_xy) * site1(theta_y);
  const ComplexMatrix rhs = site2(theta_y) * site1(theta_xy) * site2(theta_x);
  return max_norm_distance(lhs, rhs);
}

struct UnitarityResiduals {
  /// ||R R^dagger - 1||_max
  double unit;
  /// ||R(x)^dagger - R(1/x)||_max
  double inverse;
};

inline UnitarityResiduals unitarity_residuals(Dimension d, double theta) {
  const ComplexMatrix r = r_matrix(d, theta).matrix;
  const ComplexMatrix r_inv = r_matrix(d, -theta).matrix;
  return {unitarity_residual(r), max_norm_distance(adjoint(r), r_inv)};
}

/// ||M^2 - (d-2) M - (d-1) 1||_max, evaluated in integers.
inline double hecke_quadratic_residual(Dimension d) {
  const IntMatrix m = m_matrix_exact(d);
  const std::int64_t dv = d.value();
  const IntMatrix lhs = m * m;
  const IntMatrix rhs = m * (dv - 2) + IntMatrix::identity(m.rows()) * (dv - 1);
  return max_norm_distance(lhs, rhs);
}

/// ||M1 M2 M1 - M2 M1 M2 + (d-1)(M1 - M2)||_max on three qudits, in integers.
inline double braid_hecke_residual(Dimension d) {
  const IntMatrix m = m_matrix_exact(d);
  const IntMatrix id = IntMatrix::identity(d.size());
  const IntMatrix m1 = kron(m, id);
  const IntMatrix m2 = kron(id, m);
  const std::int64_t g = d.value() - 1;
  const IntMatrix residual = m1 * m2 * m1 - m2 * m1 * m2 + (m1 - m2) * g;
  return max_abs(residual);
}

}  // namespace ybx
