#pragma once

#include "rbm/butterfly.hpp"
#include "rbm/dct.hpp"
#include "rbm/dense.hpp"
#include "rbm/haar.hpp"
#include "rbm/op_counter.hpp"
#include "rbm/random.hpp"

#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace rbm {

enum class RandomizerKind { Hbdct, Rbdct, Rdct, Haar };

std::string_view to_string(RandomizerKind kind);
/// Accepts hbdct, rbdct, rdct, haar in any case; throws std::invalid_argument otherwise.
RandomizerKind parse_randomizer(std::string_view name);

/// A random orthogonal Omega acting on vectors of length N = 2^n.
///
///   HBDCT  Omega = DCT * (simple butterfly)
///   RBDCT  Omega = DCT * (non-simple butterfly)
///   RDCT   Omega = DCT * diag(+-1)
///   HAAR   Omega = Haar matrix on O(N)
///
/// The random factor is applied to the vector first, the DCT second.
class Randomizer {
 public:
  using Payload = std::variant<SimpleButterfly, NonSimpleButterfly, std::vector<int>, HaarOrthogonal>;

  Randomizer(RandomizerKind kind, int levels, Payload payload);

  /// RDCT with a caller-chosen sign diagonal.
  static Randomizer rdct_with_signs(std::vector<int> signs);

  RandomizerKind kind() const { return kind_; }
  int levels() const { return levels_; }
  std::size_t dimension() const { return dimension_for_levels(levels_); }
  const Payload& payload() const { return payload_; }

  /// In-place Omega x.
  void apply(std::span<double> x, OpCounter* counter = nullptr) const;

  /// Omega A, parallel over columns.
  Matrix randomize_columns(const Matrix& a) const;

  Matrix materialize(int max_levels = kDefaultDenseCap) const;

 private:
  RandomizerKind kind_;
  int levels_;
  Payload payload_;
  std::shared_ptr<const DctPlan> dct_;
};

/// Sampling consumes the same stream as sample_simple / sample_nonsimple /
/// sample_haar, or N rademacher draws for RDCT.
Randomizer sample_randomizer(RandomizerKind kind, int n, RngState& rng);

inline Matrix randomize_columns(const Randomizer& r, const Matrix& a) {
  return r.randomize_columns(a);
}

}  // namespace rbm
