#pragma once

// Dense complex linear algebra sized for small qudit problems (d <= 8, so at
// most 512x512 for three-site operators). Storage is row-major and fixed so
// that serialized matrices are reproducible run to run.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ybx/error.hpp"

namespace ybx {

using cplx = std::complex<double>;

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
constexpr T conj_if(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <class T>
double magnitude(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::abs(v);
  } else {
    return std::abs(static_cast<double>(v));
  }
}

inline std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace detail

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorCode::DimMismatch, "entry count " + std::to_string(data_.size()) +
                                              " does not match " + detail::dims(rows_, cols_));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> entries() noexcept { return data_; }
  std::span<const T> entries() const noexcept { return data_; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix& operator+=(const Matrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  /// Dense product. Zero entries of the left factor are skipped, which makes
  /// products of the sparse-ish embedded gates cheap without a sparse type.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::DimMismatch,
                  "cannot multiply " + detail::dims(a.rows_, a.cols_) + " by " +
                      detail::dims(b.rows_, b.cols_));
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T* out_row = out.data_.data() + i * out.cols_;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        const T* b_row = b.data_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) out_row[j] += aik * b_row[j];
      }
    }
    return out;
  }

 private:
  void require_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw Error(ErrorCode::DimMismatch, detail::dims(rows_, cols_) + " vs " +
                                              detail::dims(other.rows_, other.cols_));
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
/// Exact 0/+-1 integer matrices for the permutation and Hecke algebra checks.
using IntMatrix = Matrix<std::int64_t>;
using StateVector = std::vector<cplx>;

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

template <class T>
std::vector<T> kron(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const T& x : a) {
    for (const T& y : b) out.push_back(x * y);
  }
  return out;
}

template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::conj_if(a(i, j));
  }
  return out;
}

template <class T>
T trace(const Matrix<T>& a) {
  T acc{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) acc += a(i, i);
  return acc;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorCode::DimMismatch, "matrix " + detail::dims(a.rows(), a.cols()) +
                                            " applied to vector of length " +
                                            std::to_string(v.size()));
  }
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T acc{};
    const auto r = a.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

template <class T>
ComplexMatrix to_complex(const Matrix<T>& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = cplx(static_cast<double>(a(i, j)));
  }
  return out;
}

/// max_ij |A_ij - B_ij|.
template <class T>
double max_norm_distance(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch,
                detail::dims(a.rows(), a.cols()) + " vs " + detail::dims(b.rows(), b.cols()));
  }
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    worst = std::max(worst, detail::magnitude(ea[k] - eb[k]));
  }
  return worst;
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double worst = 0.0;
  for (const T& v : a.entries()) worst = std::max(worst, detail::magnitude(v));
  return worst;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (const cplx& v : a.entries()) acc += std::norm(v);
  return std::sqrt(acc);
}

/// ||A A^dagger - I||_max.
template <class T>
double unitarity_residual(const Matrix<T>& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::DimMismatch, "unitarity needs a square matrix, got " +
                                            detail::dims(a.rows(), a.cols()));
  }
  return max_norm_distance(a * adjoint(a), Matrix<T>::identity(a.rows()));
}

inline double norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimMismatch, "inner product of lengths " + std::to_string(a.size()) +
                                            " and " + std::to_string(b.size()));
  }
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

struct Eigensystem {
  /// Sorted descending.
  std::vector<double> values;
  /// Column k is the eigenvector for values[k].
  ComplexMatrix vectors;
};

/// Eigen-decomposition of a Hermitian matrix (Eigen's self-adjoint solver).
/// Within a degenerate eigenspace the basis returned is the solver's choice.
inline Eigensystem hermitian_eigensystem(const ComplexMatrix& h, double hermitian_tol = 1e-10) {
  if (!h.is_square()) {
    throw Error(ErrorCode::DimMismatch,
                "eigensystem needs a square matrix, got " + detail::dims(h.rows(), h.cols()));
  }
  const std::size_t n = h.rows();
  const ComplexMatrix h_adj = adjoint(h);
  const double asym = max_norm_distance(h, h_adj);
  if (asym > hermitian_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||H - H^dagger||_max = " + std::to_string(asym) + " exceeds tolerance");
  }

  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd a(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.5 * (h(i, j) + h_adj(i, j));
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  }

  // Eigen returns ascending eigenvalues; reverse into descending order.
  Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(n - 1 - k);
    out.values[k] = solver.eigenvalues()(src);
    for (std::size_t i = 0; i < n; ++i) {
      out.vectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i), src);
    }
  }
  return out;
}

}  // namespace ybx
