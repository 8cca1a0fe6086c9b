#pragma once

#include "rbm/dense.hpp"
#include "rbm/op_counter.hpp"
#include "rbm/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rbm {

/// Haar-distributed orthogonal matrix on O(N), stored as N - 1 Householder
/// reflectors plus a sign.
///
/// Q = H_N H_{N-1} ... H_1, where H_j = I - 2 v_j v_j^T acts on the trailing
/// N - j + 1 coordinates and H_N = diag(1, ..., 1, last_sign). Applying Q to a
/// vector therefore runs H_1 first and the sign flip last.
class HaarOrthogonal {
 public:
  HaarOrthogonal(std::size_t dim, std::vector<std::vector<double>> reflectors, int last_sign);

  std::size_t dimension() const { return dim_; }
  /// reflectors()[j-1] is v_j, of length N - j + 1, unit norm.
  const std::vector<std::vector<double>>& reflectors() const { return reflectors_; }
  int last_sign() const { return last_sign_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> reflectors_;
  int last_sign_;
};

/// Samples from Gaussian vectors u_j in R^(N-j+1) via v = (u - |u| e1) / |u - |u| e1|.
/// Draws with |u - |u| e1| < 1e-14 |u| are redrawn. Throws std::invalid_argument for N = 0.
HaarOrthogonal sample_haar(std::size_t n, RngState& rng);

/// Q v. Records N^2 + 2N - 2 multiplications (2L + 1 per reflector of length L, one
/// for the sign).
std::vector<double> apply_haar(const HaarOrthogonal& q, std::span<const double> v,
                               OpCounter& counter);
std::vector<double> apply_haar(const HaarOrthogonal& q, std::span<const double> v);

/// Q^T v (reflectors in reverse order).
std::vector<double> apply_haar_transpose(const HaarOrthogonal& q, std::span<const double> v);

/// In-place Q A using rank-one block updates per reflector.
void apply_haar_columns(const HaarOrthogonal& q, Matrix& a);

Matrix materialize(const HaarOrthogonal& q, int max_levels = kDefaultDenseCap);

}  // namespace rbm
