#pragma once

#include <cstddef>
#include <string>

#include "ybx/error.hpp"

namespace ybx {

/// Local dimension d of each of the two qudits. Capped at 8 so that
/// three-site checks stay at or below 512x512 dense matrices.
class Dimension {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 8;

  explicit Dimension(int d) : d_(d) {
    if (d < kMin || d > kMax) {
      throw Error(ErrorCode::InvalidDimension,
                  "qudit dimension must lie in [2, 8], got " + std::to_string(d));
    }
  }

  int value() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
  /// d^2, the two-qudit Hilbert space dimension.
  std::size_t pair_size() const noexcept { return size() * size(); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

}  // namespace ybx
