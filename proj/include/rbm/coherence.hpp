#pragma once

#include "rbm/dense.hpp"
#include "rbm/random.hpp"
#include "rbm/randomizer.hpp"
#include "rbm/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rbm {

struct ThinQr {
  Matrix q;  // N x M, orthonormal columns
  Matrix r;  // M x M, upper triangular, nonnegative diagonal
};

/// Householder thin QR with the sign of each column of Q flipped so that R has a
/// nonnegative diagonal.
///
/// Throws RankDeficientError when some |R_ii| <= rank_tol * ||A||_F. The default
/// tolerance rejects numerically rank-deficient input; rank_tol = 0 rejects only an
/// exactly zero pivot.
ThinQr thin_qr(const Matrix& a, double rank_tol = 1e-12);

/// max_j ||e_j^T Q||^2 for the thin QR of A.
///
/// Uses rank_tol = 0: ill-conditioned test matrices such as `hilbert` are
/// numerically rank deficient but still have a well-defined floating-point Q.
double coherence(const Matrix& a);

/// a_ij = 1 / (i + j - 1), 1-based, of size 2^n x m.
Matrix make_hilbert(int n, std::size_t m);

/// Column 1 is a_11 e_1; columns 2..m are iid standard normal. Draws column by
/// column, top to bottom.
Matrix make_randn_test(int n, std::size_t m, RngState& rng);

enum class TestMatrix { Hilbert, Randn };

std::string_view to_string(TestMatrix m);
TestMatrix parse_test_matrix(std::string_view name);

struct CoherenceResult {
  double value = 0.0;
  int n = 0;
  std::size_t m = 0;
  RandomizerKind randomizer = RandomizerKind::Hbdct;
  std::uint64_t seed = 0;  // per-trial stream seed
};

struct ExperimentSummary {
  RandomizerKind randomizer = RandomizerKind::Hbdct;
  TestMatrix matrix = TestMatrix::Hilbert;
  int n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  double sample_mean = 0.0;
  double sample_std = 0.0;
};

struct CoherenceExperiment {
  ExperimentSummary summary;
  std::vector<CoherenceResult> trials;
};

struct CoherenceConfig {
  TestMatrix matrix = TestMatrix::Hilbert;
  RandomizerKind randomizer = RandomizerKind::Hbdct;
  int n = 9;
  std::size_t m = 100;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  /// Keep one randn base matrix for all trials instead of redrawing it per trial.
  bool fix_base = false;
};

/// Level cap for the O(N^2 M) Haar randomizer.
inline constexpr int kHaarCoherenceCap = 12;

/// For each trial t, stream RngState::for_trial(seed, t) draws the randn base
/// (unless fixed) and then Omega; the trial value is coherence(Omega A). A fixed
/// randn base comes from RngState(splitmix64(seed)).
CoherenceExperiment coherence_experiment(const CoherenceConfig& config);

}  // namespace rbm
