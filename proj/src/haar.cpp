#include "rbm/haar.hpp"

#include "rbm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rbm {
namespace {

void check_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionError("vector length " + std::to_string(got) + " does not match dimension " +
                         std::to_string(expected));
  }
}

// x_tail <- x_tail - 2 v (v^T x_tail)
void reflect(std::span<const double> v, std::span<double> tail) {
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * tail[i];
  const double alpha = 2.0 * dot;
  for (std::size_t i = 0; i < v.size(); ++i) tail[i] -= alpha * v[i];
}

}  // namespace

HaarOrthogonal::HaarOrthogonal(std::size_t dim, std::vector<std::vector<double>> reflectors,
                               int last_sign)
    : dim_(dim), reflectors_(std::move(reflectors)), last_sign_(last_sign) {
  if (dim_ == 0) throw std::invalid_argument("Haar dimension must be at least 1");
  if (reflectors_.size() != dim_ - 1) {
    throw std::invalid_argument("expected " + std::to_string(dim_ - 1) + " reflectors");
  }
  for (std::size_t j = 0; j < reflectors_.size(); ++j) {
    if (reflectors_[j].size() != dim_ - j) {
      throw std::invalid_argument("reflector " + std::to_string(j + 1) + " has wrong length");
    }
  }
  if (last_sign_ != 1 && last_sign_ != -1) throw std::invalid_argument("last_sign must be +-1");
}

HaarOrthogonal sample_haar(std::size_t n, RngState& rng) {
  if (n == 0) throw std::invalid_argument("Haar dimension must be at least 1");
  std::vector<std::vector<double>> reflectors;
  reflectors.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t len = n - j + 1;
    std::vector<double> u(len);
    while (true) {
      for (auto& x : u) x = standard_normal(rng);
      const double unorm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
      u[0] -= unorm;
      const double wnorm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
      if (wnorm >= 1e-14 * unorm) {
        for (auto& x : u) x /= wnorm;
        break;
      }
    }
    reflectors.push_back(std::move(u));
  }
  double last = 0.0;
  while (last == 0.0) last = standard_normal(rng);
  return HaarOrthogonal(n, std::move(reflectors), last > 0.0 ? 1 : -1);
}

std::vector<double> apply_haar(const HaarOrthogonal& q, std::span<const double> v,
                               OpCounter& counter) {
  check_length(q.dimension(), v.size());
  std::vector<double> x(v.begin(), v.end());
  const std::span<double> xs(x);
  for (std::size_t j = 0; j < q.reflectors().size(); ++j) {
    const auto& r = q.reflectors()[j];
    reflect(r, xs.subspan(j));
    counter.add(2 * r.size() + 1);
  }
  x.back() *= q.last_sign();
  counter.add(1);
  return x;
}

std::vector<double> apply_haar(const HaarOrthogonal& q, std::span<const double> v) {
  OpCounter unused;
  return apply_haar(q, v, unused);
}

std::vector<double> apply_haar_transpose(const HaarOrthogonal& q, std::span<const double> v) {
  check_length(q.dimension(), v.size());
  std::vector<double> x(v.begin(), v.end());
  const std::span<double> xs(x);
  x.back() *= q.last_sign();
  for (std::size_t j = q.reflectors().size(); j-- > 0;) reflect(q.reflectors()[j], xs.subspan(j));
  return x;
}

void apply_haar_columns(const HaarOrthogonal& q, Matrix& a) {
  check_length(q.dimension(), static_cast<std::size_t>(a.rows()));
  const auto n = static_cast<Eigen::Index>(q.dimension());
  constexpr Eigen::Index kBlock = 16;
  const Eigen::Index blocks = (a.cols() + kBlock - 1) / kBlock;
  // Column blocks are independent; each runs the full reflector sequence.
#pragma omp parallel for schedule(static)
  for (Eigen::Index blk = 0; blk < blocks; ++blk) {
    const Eigen::Index first = blk * kBlock;
    const Eigen::Index width = std::min(kBlock, a.cols() - first);
    auto cols = a.middleCols(first, width);
    Eigen::RowVectorXd w(width);
    for (std::size_t j = 0; j < q.reflectors().size(); ++j) {
      const auto& r = q.reflectors()[j];
      const auto len = static_cast<Eigen::Index>(r.size());
      const Eigen::Map<const Eigen::VectorXd> v(r.data(), len);
      auto tail = cols.bottomRows(len);
      w.noalias() = v.transpose() * tail;
      tail.noalias() -= (2.0 * v) * w;
    }
    cols.row(n - 1) *= static_cast<double>(q.last_sign());
  }
}

Matrix materialize(const HaarOrthogonal& q, int max_levels) {
  const auto n = static_cast<Eigen::Index>(q.dimension());
  if (q.dimension() > dimension_for_levels(max_levels)) {
    throw CapacityError("dense materialization dimension",
                        static_cast<long long>(dimension_for_levels(max_levels)), n);
  }
  Matrix m = Matrix::Identity(n, n);
  apply_haar_columns(q, m);
  return m;
}

}  // namespace rbm
