#include "rbm/dct.hpp"

#include "rbm/error.hpp"
#include "rbm/reference.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace rbm {

DctPlan::DctPlan(std::size_t n) : n_(n), fast_(std::has_single_bit(n)) {
  if (n == 0) throw std::invalid_argument("DCT length must be at least 1");
  if (!fast_) return;
  log2n_ = std::countr_zero(n);

  bitrev_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < log2n_; ++b) r |= ((i >> b) & 1U) << (log2n_ - 1 - b);
    bitrev_[i] = r;
  }

  const auto nd = static_cast<double>(n);
  twiddle_re_.resize(n / 2);
  twiddle_im_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double phi = -2.0 * std::numbers::pi * static_cast<double>(k) / nd;
    twiddle_re_[k] = std::cos(phi);
    twiddle_im_[k] = std::sin(phi);
  }

  post_cos_.resize(n);
  post_sin_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / nd);
    const double phi = std::numbers::pi * static_cast<double>(k) / (2.0 * nd);
    post_cos_[k] = scale * std::cos(phi);
    post_sin_[k] = scale * std::sin(phi);
  }
}

std::size_t DctPlan::multiplications_per_apply() const {
  if (!fast_) return n_ * n_ + n_;
  return 2 * n_ * static_cast<std::size_t>(log2n_) + 2 * n_;
}

void DctPlan::apply(std::span<const double> in, std::span<double> out, OpCounter* counter) const {
  if (in.size() != n_ || out.size() != n_) {
    throw DimensionError("DCT plan of length " + std::to_string(n_) + " got input " +
                         std::to_string(in.size()));
  }
  if (counter != nullptr) counter->add(multiplications_per_apply());

  if (!fast_) {
    const auto direct = reference::dct_direct(in);
    std::copy(direct.begin(), direct.end(), out.begin());
    return;
  }

  const std::size_t n = n_;
  // Even entries ascending, odd entries descending, stored in bit-reversed order.
  std::vector<double> re(n);
  std::vector<double> im(n, 0.0);
  for (std::size_t m = 0; m < n / 2; ++m) {
    re[bitrev_[m]] = in[2 * m];
    re[bitrev_[n - 1 - m]] = in[2 * m + 1];
  }
  if (n == 1) re[0] = in[0];

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const double wr = twiddle_re_[k * stride];
        const double wi = twiddle_im_[k * stride];
        const std::size_t a = start + k;
        const std::size_t b = a + half;
        const double tr = wr * re[b] - wi * im[b];
        const double ti = wr * im[b] + wi * re[b];
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) out[k] = post_cos_[k] * re[k] + post_sin_[k] * im[k];
}

std::vector<double> dct_apply(std::span<const double> v, OpCounter* counter) {
  std::vector<double> out(v.size());
  DctPlan(v.size()).apply(v, out, counter);
  return out;
}

}  // namespace rbm
