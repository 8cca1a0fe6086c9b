#pragma once

#include "rbm/op_counter.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rbm {

/// Orthonormal DCT-II of length N:
///   out[k] = s_k * sum_{m<N} v[m] cos(pi (m + 1/2) k / N),
///   s_0 = sqrt(1/N), s_k = sqrt(2/N) for k >= 1.
///
/// Power-of-two lengths use a length-N radix-2 complex FFT of the even/odd
/// reordered input; the multiplication count is then exactly 2 N log2 N + 2 N.
/// Other lengths fall back to direct summation (N^2 + N counted multiplications).
class DctPlan {
 public:
  explicit DctPlan(std::size_t n);

  std::size_t size() const { return n_; }
  bool fast() const { return fast_; }

  /// in and out may alias.
  void apply(std::span<const double> in, std::span<double> out, OpCounter* counter = nullptr) const;

  /// Multiplications recorded by one apply().
  std::size_t multiplications_per_apply() const;

 private:
  std::size_t n_;
  int log2n_ = 0;
  bool fast_;
  std::vector<std::size_t> bitrev_;
  std::vector<double> twiddle_re_;  // exp(-2 pi i k / N), k < N/2
  std::vector<double> twiddle_im_;
  std::vector<double> post_cos_;  // s_k cos(pi k / 2N)
  std::vector<double> post_sin_;  // s_k sin(pi k / 2N)
};

std::vector<double> dct_apply(std::span<const double> v, OpCounter* counter = nullptr);

}  // namespace rbm
