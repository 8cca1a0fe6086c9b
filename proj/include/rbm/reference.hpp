#pragma once

// Serial reference implementations kept for testing and benchmarking. They follow
// the textbook recursions literally (split, recurse on both halves, combine) and
// allocate freely.

#include "rbm/butterfly.hpp"
#include "rbm/random.hpp"

#include <span>
#include <vector>

namespace rbm::reference {

/// Recursive simple butterfly; angles.back() is the outermost level.
std::vector<double> simple_recursive(std::span<const Angle> angles, std::span<const double> v);

/// Recursive non-simple butterfly following the heap layout of NonSimpleButterfly.
std::vector<double> nonsimple_recursive(const NonSimpleButterfly& b, std::span<const double> v);

/// Orthonormal DCT-II by direct O(N^2) summation.
std::vector<double> dct_direct(std::span<const double> v);

}  // namespace rbm::reference
