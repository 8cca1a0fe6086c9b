#include "rbm/kernels.hpp"

#include <cstdint>

namespace rbm::kernels {
namespace {

inline void rotate_pair(double c, double s, double& top, double& bottom) {
  const double a = top;
  const double b = bottom;
  top = c * a + s * b;
  bottom = -s * a + c * b;
}

}  // namespace

namespace serial {

void simple_sweep(Rotations r, std::span<double> x) {
  const std::size_t n = x.size();
  std::size_t level = 0;
  for (std::size_t half = 1; half < n; half <<= 1, ++level) {
    const double c = r.cos[level];
    const double s = r.sin[level];
    for (std::size_t base = 0; base < n; base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) rotate_pair(c, s, x[i], x[i + half]);
    }
  }
}

void nonsimple_sweep(Rotations r, int levels, std::span<double> x) {
  const std::size_t n = x.size();
  int level = 0;
  for (std::size_t half = 1; half < n; half <<= 1, ++level) {
    // Blocks of size 2*half sit at tree depth levels-1-level; heap index 2^depth + block.
    const std::size_t first_node = std::size_t{1} << (levels - 1 - level);
    for (std::size_t base = 0, block = 0; base < n; base += 2 * half, ++block) {
      const std::size_t node = first_node + block - 1;
      const double c = r.cos[node];
      const double s = r.sin[node];
      for (std::size_t i = base; i < base + half; ++i) rotate_pair(c, s, x[i], x[i + half]);
    }
  }
}

void simple_columns(Rotations r, Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    simple_sweep(r, std::span<double>(a.col(j).data(), static_cast<std::size_t>(a.rows())));
  }
}

void nonsimple_columns(Rotations r, int levels, Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    nonsimple_sweep(r, levels,
                    std::span<double>(a.col(j).data(), static_cast<std::size_t>(a.rows())));
  }
}

}  // namespace serial

namespace parallel {

void simple_sweep(Rotations r, std::span<double> x) {
  const auto n = static_cast<std::int64_t>(x.size());
  const auto pairs = n / 2;
  double* data = x.data();
#pragma omp parallel
  {
    std::int64_t level = 0;
    for (std::int64_t half = 1; half < n; half <<= 1, ++level) {
      const double c = r.cos[static_cast<std::size_t>(level)];
      const double s = r.sin[static_cast<std::size_t>(level)];
#pragma omp for schedule(static)
      for (std::int64_t p = 0; p < pairs; ++p) {
        const std::int64_t i = (p / half) * 2 * half + p % half;
        rotate_pair(c, s, data[i], data[i + half]);
      }
    }
  }
}

void nonsimple_sweep(Rotations r, int levels, std::span<double> x) {
  const auto n = static_cast<std::int64_t>(x.size());
  const auto pairs = n / 2;
  double* data = x.data();
#pragma omp parallel
  {
    int level = 0;
    for (std::int64_t half = 1; half < n; half <<= 1, ++level) {
      const std::int64_t first_node = std::int64_t{1} << (levels - 1 - level);
#pragma omp for schedule(static)
      for (std::int64_t p = 0; p < pairs; ++p) {
        const std::int64_t block = p / half;
        const std::int64_t i = block * 2 * half + p % half;
        const auto node = static_cast<std::size_t>(first_node + block - 1);
        rotate_pair(r.cos[node], r.sin[node], data[i], data[i + half]);
      }
    }
  }
}

void simple_columns(Rotations r, Matrix& a) {
  const auto rows = static_cast<std::size_t>(a.rows());
  const auto cols = static_cast<std::int64_t>(a.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < cols; ++j) {
    serial::simple_sweep(r, std::span<double>(a.col(j).data(), rows));
  }
}

void nonsimple_columns(Rotations r, int levels, Matrix& a) {
  const auto rows = static_cast<std::size_t>(a.rows());
  const auto cols = static_cast<std::int64_t>(a.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < cols; ++j) {
    serial::nonsimple_sweep(r, levels, std::span<double>(a.col(j).data(), rows));
  }
}

}  // namespace parallel

}  // namespace rbm::kernels
