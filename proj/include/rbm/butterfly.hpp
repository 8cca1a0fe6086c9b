#pragma once

#include "rbm/dense.hpp"
#include "rbm/op_counter.hpp"
#include "rbm/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rbm {

/// Haar-butterfly matrix in B(2^n): one rotation angle per recursion level.
///
/// angles()[j] is the level-j angle. The outermost 2x2 block structure uses
/// angles()[n-1]; the innermost 2x2 rotations use angles()[0]. For n = 2 the matrix
/// is R(angles[1]) kron R(angles[0]) with R(t) = [[cos t, sin t], [-sin t, cos t]].
class SimpleButterfly {
 public:
  SimpleButterfly() = default;
  explicit SimpleButterfly(std::vector<Angle> angles);

  int levels() const { return static_cast<int>(angles_.size()); }
  /// Only meaningful for levels() <= 40, the largest size any apply accepts. Longer
  /// angle lists are allowed for closed-form trace and CLT statistics.
  std::size_t dimension() const { return dimension_for_levels(levels()); }
  std::span<const Angle> angles() const { return angles_; }

  /// The group inverse (all angles negated).
  SimpleButterfly inverse() const;

  /// Group product: materialize(a) * materialize(b) == materialize(a.compose(b)).
  SimpleButterfly compose(const SimpleButterfly& other) const;

 private:
  std::vector<Angle> angles_;
};

/// Non-simple random butterfly matrix with an independent angle at every node.
///
/// The 2^n - 1 angles are stored in heap order: node 1 is the root (outermost
/// block structure), node i has children 2i (top-left block, acting on the top half
/// of the input) and 2i + 1 (bottom-right block). Nodes at depth n - 1 are the 2x2
/// rotations.
class NonSimpleButterfly {
 public:
  NonSimpleButterfly() = default;
  /// tree.size() + 1 must be a power of two.
  explicit NonSimpleButterfly(std::vector<Angle> tree);

  int levels() const { return levels_; }
  std::size_t dimension() const { return dimension_for_levels(levels_); }
  std::span<const Angle> tree() const { return tree_; }

  /// 1-based heap index.
  Angle node(std::size_t heap_index) const { return tree_[heap_index - 1]; }

 private:
  int levels_ = 0;
  std::vector<Angle> tree_;
};

SimpleButterfly sample_simple(int n, RngState& rng);
NonSimpleButterfly sample_nonsimple(int n, RngState& rng);

/// B v by level sweep. Records exactly n * 2^(n+1) multiplications.
std::vector<double> apply_simple(const SimpleButterfly& b, std::span<const double> v,
                                 OpCounter& counter);
std::vector<double> apply_simple(const SimpleButterfly& b, std::span<const double> v);

/// B^T w, i.e. the butterfly with every angle negated.
std::vector<double> apply_simple_inverse(const SimpleButterfly& b, std::span<const double> w);

/// Block of B v containing entry j.
///
/// With w = B v split into 2^k consecutive blocks of length 2^(n-k), returns the
/// block that holds the 1-based entry j. Arithmetic matches apply_simple exactly, so
/// the result is bitwise equal to the corresponding slice of the full product.
/// Records 2^(n+1) (n-k+1) - 2^(n-k+1) multiplications.
std::vector<double> apply_simple_subsampled(const SimpleButterfly& b, std::span<const double> v,
                                            std::size_t j, int k, OpCounter& counter);

/// Q v for a non-simple butterfly. Records exactly n * 2^(n+1) multiplications.
std::vector<double> apply_nonsimple(const NonSimpleButterfly& b, std::span<const double> v,
                                    OpCounter& counter);
std::vector<double> apply_nonsimple(const NonSimpleButterfly& b, std::span<const double> v);

/// In-place application to every column of a, parallel over columns.
void apply_columns(const SimpleButterfly& b, Matrix& a);
void apply_columns(const NonSimpleButterfly& b, Matrix& a);

/// Dense N x N matrix whose column i is apply(b, e_i). Throws CapacityError when
/// b.levels() > max_levels.
Matrix materialize(const SimpleButterfly& b, int max_levels = kDefaultDenseCap);
Matrix materialize(const NonSimpleButterfly& b, int max_levels = kDefaultDenseCap);

}  // namespace rbm
