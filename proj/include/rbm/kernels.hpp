#pragma once

// Low-level butterfly sweeps over raw spans.
//
// Every kernel applies, at each level, the same per-pair update
//   x[i] = c*a + s*b,  x[i+h] = -s*a + c*b
// in the same expression order, so the serial, OpenMP and recursive reference
// variants produce bitwise-identical results (compiled with -ffp-contract=off).

#include "rbm/dense.hpp"

#include <cstddef>
#include <span>

namespace rbm::kernels {

/// Cosines and sines for one butterfly, indexed by level (simple) or by heap
/// index - 1 (non-simple).
struct Rotations {
  std::span<const double> cos;
  std::span<const double> sin;
};

// Vector length at or above which apply_* switches to the OpenMP sweep.
inline constexpr std::size_t kParallelSweepThreshold = std::size_t{1} << 15;

namespace serial {
void simple_sweep(Rotations r, std::span<double> x);
void nonsimple_sweep(Rotations r, int levels, std::span<double> x);
void simple_columns(Rotations r, Matrix& a);
void nonsimple_columns(Rotations r, int levels, Matrix& a);
}  // namespace serial

namespace parallel {
/// Splits each level's pair loop across threads.
void simple_sweep(Rotations r, std::span<double> x);
void nonsimple_sweep(Rotations r, int levels, std::span<double> x);
/// One column per iteration; columns are independent.
void simple_columns(Rotations r, Matrix& a);
void nonsimple_columns(Rotations r, int levels, Matrix& a);
}  // namespace parallel

}  // namespace rbm::kernels
