#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace rbm {

using Matrix = Eigen::MatrixXd;  // column-major; each column is contiguous

/// Largest level count n (N = 2^n) that may be materialized densely.
inline constexpr int kDefaultDenseCap = 12;

/// Level cap for dense eigensolves and dense trace powers.
inline constexpr int kSpectralDenseCap = 10;

inline constexpr std::size_t dimension_for_levels(int n) { return std::size_t{1} << n; }

}  // namespace rbm
