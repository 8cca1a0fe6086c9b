#include "rbm/butterfly.hpp"

#include "rbm/error.hpp"
#include "rbm/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace rbm {
namespace {

struct TrigTable {
  std::vector<double> cos;
  std::vector<double> sin;

  explicit TrigTable(std::span<const Angle> angles) : cos(angles.size()), sin(angles.size()) {
    for (std::size_t i = 0; i < angles.size(); ++i) {
      cos[i] = angles[i].cos();
      sin[i] = angles[i].sin();
    }
  }

  kernels::Rotations view() const { return {cos, sin}; }
};

void check_levels(int n) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative, got " + std::to_string(n));
  if (n > 40) throw CapacityError("butterfly level", 40, n);
}

// Vectors exist only for levels <= 40; larger simple butterflies are
// still valid for closed-form spectral work.
void check_length(int levels, std::size_t got) {
  if (levels > 40) throw CapacityError("butterfly apply level", 40, levels);
  const std::size_t expected = dimension_for_levels(levels);
  if (expected != got) {
    throw DimensionError("vector length " + std::to_string(got) + " does not match dimension " +
                         std::to_string(expected));
  }
}

std::uint64_t full_apply_count(int n) {
  return n == 0 ? 0 : static_cast<std::uint64_t>(n) << (n + 1);
}

void sweep_simple(const TrigTable& t, std::span<double> x) {
  if (x.size() >= kernels::kParallelSweepThreshold) {
    kernels::parallel::simple_sweep(t.view(), x);
  } else {
    kernels::serial::simple_sweep(t.view(), x);
  }
}

// Mirrors the recursive subsampled algorithm: combine the aligned sub-blocks of the
// two half-products at each of the top k levels, then fall back to the full sweep.
void subsampled(const TrigTable& t, int levels, std::span<const double> v, std::size_t j, int k,
                std::span<double> out, OpCounter& counter) {
  if (k == 0) {
    std::copy(v.begin(), v.end(), out.begin());
    kernels::Rotations r{std::span<const double>(t.cos).first(static_cast<std::size_t>(levels)),
                         std::span<const double>(t.sin).first(static_cast<std::size_t>(levels))};
    kernels::serial::simple_sweep(r, out);
    counter.add(full_apply_count(levels));
    return;
  }
  const std::size_t m = v.size() / 2;
  const bool lower = j > m;
  const std::size_t sub_j = lower ? j - m : j;
  std::vector<double> v1(out.size());
  std::vector<double> v2(out.size());
  subsampled(t, levels - 1, v.first(m), sub_j, k - 1, v1, counter);
  subsampled(t, levels - 1, v.subspan(m), sub_j, k - 1, v2, counter);
  const double c = t.cos[static_cast<std::size_t>(levels - 1)];
  const double s = t.sin[static_cast<std::size_t>(levels - 1)];
  if (lower) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -s * v1[i] + c * v2[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * v1[i] + s * v2[i];
  }
  counter.add(2 * out.size());
}

void check_dense_cap(int levels, int max_levels) {
  if (levels > max_levels) throw CapacityError("dense materialization level", max_levels, levels);
}

}  // namespace

SimpleButterfly::SimpleButterfly(std::vector<Angle> angles) : angles_(std::move(angles)) {}

SimpleButterfly SimpleButterfly::inverse() const {
  std::vector<Angle> negated(angles_.size());
  std::transform(angles_.begin(), angles_.end(), negated.begin(), [](Angle a) { return -a; });
  return SimpleButterfly(std::move(negated));
}

SimpleButterfly SimpleButterfly::compose(const SimpleButterfly& other) const {
  if (other.levels() != levels()) {
    throw DimensionError("cannot compose butterflies with " + std::to_string(levels()) + " and " +
                         std::to_string(other.levels()) + " levels");
  }
  std::vector<Angle> sum(angles_.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = angles_[i] + other.angles_[i];
  return SimpleButterfly(std::move(sum));
}

NonSimpleButterfly::NonSimpleButterfly(std::vector<Angle> tree) : tree_(std::move(tree)) {
  const std::size_t nodes_plus_one = tree_.size() + 1;
  if (!std::has_single_bit(nodes_plus_one)) {
    throw std::invalid_argument("angle tree must hold 2^n - 1 nodes, got " +
                                std::to_string(tree_.size()));
  }
  levels_ = std::countr_zero(nodes_plus_one);
  check_levels(levels_);
}

SimpleButterfly sample_simple(int n, RngState& rng) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative, got " + std::to_string(n));
  std::vector<Angle> angles(static_cast<std::size_t>(n));
  for (auto& a : angles) a = uniform_angle(rng);
  return SimpleButterfly(std::move(angles));
}

NonSimpleButterfly sample_nonsimple(int n, RngState& rng) {
  check_levels(n);
  std::vector<Angle> tree(dimension_for_levels(n) - 1);
  for (auto& a : tree) a = uniform_angle(rng);
  return NonSimpleButterfly(std::move(tree));
}

std::vector<double> apply_simple(const SimpleButterfly& b, std::span<const double> v,
                                 OpCounter& counter) {
  check_length(b.levels(), v.size());
  std::vector<double> x(v.begin(), v.end());
  sweep_simple(TrigTable(b.angles()), x);
  counter.add(full_apply_count(b.levels()));
  return x;
}

std::vector<double> apply_simple(const SimpleButterfly& b, std::span<const double> v) {
  OpCounter unused;
  return apply_simple(b, v, unused);
}

std::vector<double> apply_simple_inverse(const SimpleButterfly& b, std::span<const double> w) {
  return apply_simple(b.inverse(), w);
}

std::vector<double> apply_simple_subsampled(const SimpleButterfly& b, std::span<const double> v,
                                            std::size_t j, int k, OpCounter& counter) {
  check_length(b.levels(), v.size());
  if (k < 0 || k > b.levels()) {
    throw std::out_of_range("subsampling depth k=" + std::to_string(k) + " outside [0, " +
                            std::to_string(b.levels()) + "]");
  }
  if (j < 1 || j > b.dimension()) {
    throw std::out_of_range("entry index j=" + std::to_string(j) + " outside [1, " +
                            std::to_string(b.dimension()) + "]");
  }
  const TrigTable t(b.angles());
  std::vector<double> out(b.dimension() >> k);
  subsampled(t, b.levels(), v, j, k, out, counter);
  return out;
}

std::vector<double> apply_nonsimple(const NonSimpleButterfly& b, std::span<const double> v,
                                    OpCounter& counter) {
  check_length(b.levels(), v.size());
  std::vector<double> x(v.begin(), v.end());
  const TrigTable t(b.tree());
  if (x.size() >= kernels::kParallelSweepThreshold) {
    kernels::parallel::nonsimple_sweep(t.view(), b.levels(), x);
  } else {
    kernels::serial::nonsimple_sweep(t.view(), b.levels(), x);
  }
  counter.add(full_apply_count(b.levels()));
  return x;
}

std::vector<double> apply_nonsimple(const NonSimpleButterfly& b, std::span<const double> v) {
  OpCounter unused;
  return apply_nonsimple(b, v, unused);
}

void apply_columns(const SimpleButterfly& b, Matrix& a) {
  check_length(b.levels(), static_cast<std::size_t>(a.rows()));
  kernels::parallel::simple_columns(TrigTable(b.angles()).view(), a);
}

void apply_columns(const NonSimpleButterfly& b, Matrix& a) {
  check_length(b.levels(), static_cast<std::size_t>(a.rows()));
  kernels::parallel::nonsimple_columns(TrigTable(b.tree()).view(), b.levels(), a);
}

Matrix materialize(const SimpleButterfly& b, int max_levels) {
  check_dense_cap(b.levels(), max_levels);
  const auto n = static_cast<Eigen::Index>(b.dimension());
  Matrix m = Matrix::Identity(n, n);
  apply_columns(b, m);
  return m;
}

Matrix materialize(const NonSimpleButterfly& b, int max_levels) {
  check_dense_cap(b.levels(), max_levels);
  const auto n = static_cast<Eigen::Index>(b.dimension());
  Matrix m = Matrix::Identity(n, n);
  apply_columns(b, m);
  return m;
}

}  // namespace rbm
