#pragma once

#include "rbm/butterfly.hpp"
#include "rbm/dense.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rbm {

enum class Ensemble { Simple, Nonsimple, Iid, Haar };

std::string_view to_string(Ensemble e);
Ensemble parse_ensemble(std::string_view name);

/// Eigenvalue arguments of a real orthogonal matrix, sorted, each in [0, 2*pi).
struct SpectrumSample {
  std::vector<double> eigen_args;
};

/// All 2^n sign combinations +-theta_0 +- ... +- theta_{n-1} (mod 2*pi), built by
/// doubling one level at a time. No dense solve. Capped at kClosedFormSpectrumCap levels.
inline constexpr int kClosedFormSpectrumCap = 26;
SpectrumSample eigenvalues_simple(const SimpleButterfly& b);

/// Phases from a dense nonsymmetric eigensolve.
SpectrumSample eigenvalues_dense(const Matrix& m);

/// tr B^k = N prod_j cos(k theta_j).
double trace_power_simple(const SimpleButterfly& b, unsigned k);

/// tr M^k by repeated multiplication. Throws CapacityError when the dimension
/// exceeds 2^max_levels.
double trace_power_dense(const Matrix& m, unsigned k, int max_levels = kDefaultDenseCap);

struct MomentReport {
  unsigned k = 0;
  double mean_normalized_trace = 0.0;  // estimate of E[(1/N) tr Q^k]
  double second_moment = 0.0;          // estimate of E[(tr Q^k)^2]
  std::size_t trials = 0;
  double std_error = 0.0;                // of mean_normalized_trace
  double second_moment_std_error = 0.0;  // of second_moment
};

/// Monte Carlo trace moments. Simple uses the product formula (any n); nonsimple
/// materializes and is capped at kSpectralDenseCap levels. Trial t uses
/// RngState::for_trial(seed, t).
MomentReport moment_experiment(Ensemble ensemble, int n, unsigned k, std::size_t trials,
                               std::uint64_t seed);

/// (1/n) log((tr B^k)^2 / N) = (1/n) (sum_j log cos^2(k theta_j) + n log 2),
/// evaluated in log form so that n may be large.
double clt_statistic(const SimpleButterfly& b, unsigned k);

struct CltResult {
  std::vector<double> values;            // one per trial
  std::size_t degenerate_resamples = 0;  // angles redrawn because |cos(k theta)| < 1e-300
};

CltResult clt_failure_statistic(int n, unsigned k, std::size_t trials, std::uint64_t seed);

/// x_j = cos(hat_theta_j) with hat_theta_0 = sum_j theta_j and
/// hat_theta_j = hat_theta_0 - 2 theta_j for j >= 1.
std::vector<double> pair_variables(const SimpleButterfly& b);

/// Row-major trials x n samples of pair_variables.
struct PairSamples {
  int n = 0;
  std::size_t trials = 0;
  std::vector<double> x;

  double at(std::size_t trial, int j) const { return x[trial * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  std::vector<double> column(int j) const;
};

PairSamples pair_variable_distribution(int n, std::size_t trials, std::uint64_t seed);

struct SpectrumRow {
  std::size_t trial;
  double phase;
};

/// Level cap for closed-form (simple) and iid spectrum output.
inline constexpr int kSpectrumOutputCap = 24;

/// Eigen-phases for every trial, grouped by trial. The iid ensemble draws N/2
/// uniform phases and emits each with its conjugate 2*pi - phase.
std::vector<SpectrumRow> spectrum_cloud(Ensemble ensemble, int n, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace rbm
