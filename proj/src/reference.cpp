#include "rbm/reference.hpp"

#include <cmath>
#include <numbers>

namespace rbm::reference {
namespace {

std::vector<double> combine(double c, double s, const std::vector<double>& v1,
                            const std::vector<double>& v2) {
  const std::size_t m = v1.size();
  std::vector<double> out(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = c * v1[i] + s * v2[i];
    out[i + m] = -s * v1[i] + c * v2[i];
  }
  return out;
}

std::vector<double> nonsimple_node(const NonSimpleButterfly& b, std::size_t node,
                                   std::span<const double> v) {
  if (v.size() == 1) return {v[0]};
  const std::size_t m = v.size() / 2;
  const auto v1 = nonsimple_node(b, 2 * node, v.first(m));
  const auto v2 = nonsimple_node(b, 2 * node + 1, v.subspan(m));
  const Angle t = b.node(node);
  return combine(t.cos(), t.sin(), v1, v2);
}

}  // namespace

std::vector<double> simple_recursive(std::span<const Angle> angles, std::span<const double> v) {
  if (angles.empty()) return {v.begin(), v.end()};
  const std::size_t m = v.size() / 2;
  const auto inner = angles.first(angles.size() - 1);
  const auto v1 = simple_recursive(inner, v.first(m));
  const auto v2 = simple_recursive(inner, v.subspan(m));
  const Angle t = angles.back();
  return combine(t.cos(), t.sin(), v1, v2);
}

std::vector<double> nonsimple_recursive(const NonSimpleButterfly& b, std::span<const double> v) {
  return nonsimple_node(b, 1, v);
}

std::vector<double> dct_direct(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      acc += v[m] * std::cos(std::numbers::pi * (static_cast<double>(m) + 0.5) *
                             static_cast<double>(k) / static_cast<double>(n));
    }
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
    out[k] = scale * acc;
  }
  return out;
}

}  // namespace rbm::reference
