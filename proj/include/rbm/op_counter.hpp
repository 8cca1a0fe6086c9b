#pragma once

#include <cstdint>

namespace rbm {

/// Counts real scalar multiplications performed by a fast-apply call. Additions
/// are not counted.
struct OpCounter {
  std::uint64_t multiplications = 0;

  void add(std::uint64_t n) { multiplications += n; }
  void reset() { multiplications = 0; }
};

}  // namespace rbm
