#include "rbm/spectral.hpp"

#include "rbm/error.hpp"
#include "rbm/haar.hpp"
#include "rbm/parallel.hpp"
#include "rbm/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace rbm {
namespace {

void check_nonnegative(int n) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative, got " + std::to_string(n));
}

double wrap_phase(double phi) { return Angle::wrap(phi).radians(); }

}  // namespace

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::Simple: return "simple";
    case Ensemble::Nonsimple: return "nonsimple";
    case Ensemble::Iid: return "iid";
    case Ensemble::Haar: return "haar";
  }
  return "unknown";
}

Ensemble parse_ensemble(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "simple") return Ensemble::Simple;
  if (lower == "nonsimple") return Ensemble::Nonsimple;
  if (lower == "iid") return Ensemble::Iid;
  if (lower == "haar") return Ensemble::Haar;
  throw std::invalid_argument("unknown ensemble '" + std::string(name) +
                              "' (expected simple, nonsimple, iid or haar)");
}

SpectrumSample eigenvalues_simple(const SimpleButterfly& b) {
  if (b.levels() > kClosedFormSpectrumCap) {
    throw CapacityError("closed-form eigenvalue level", kClosedFormSpectrumCap, b.levels());
  }
  std::vector<Angle> phases{Angle{}};
  phases.reserve(b.dimension());
  for (const Angle theta : b.angles()) {
    const std::size_t m = phases.size();
    phases.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      const Angle base = phases[i];
      phases[i] = base + theta;
      phases[i + m] = base + (-theta);
    }
  }
  SpectrumSample s;
  s.eigen_args.reserve(phases.size());
  for (const Angle a : phases) s.eigen_args.push_back(a.radians());
  std::sort(s.eigen_args.begin(), s.eigen_args.end());
  return s;
}

SpectrumSample eigenvalues_dense(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues need a square matrix");
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolve did not converge");
  SpectrumSample s;
  const auto& ev = solver.eigenvalues();
  s.eigen_args.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    s.eigen_args.push_back(wrap_phase(std::atan2(ev[i].imag(), ev[i].real())));
  }
  std::sort(s.eigen_args.begin(), s.eigen_args.end());
  return s;
}

double trace_power_simple(const SimpleButterfly& b, unsigned k) {
  double t = static_cast<double>(b.dimension());
  if (k == 0) return t;
  for (const Angle theta : b.angles()) t *= std::cos(static_cast<double>(k) * theta.radians());
  return t;
}

double trace_power_dense(const Matrix& m, unsigned k, int max_levels) {
  if (m.rows() != m.cols()) throw DimensionError("trace power needs a square matrix");
  const auto cap = static_cast<long long>(dimension_for_levels(max_levels));
  if (m.rows() > cap) throw CapacityError("dense trace dimension", cap, m.rows());
  if (k == 0) return static_cast<double>(m.rows());
  Matrix p = m;
  for (unsigned i = 1; i < k; ++i) p = p * m;
  return p.trace();
}

MomentReport moment_experiment(Ensemble ensemble, int n, unsigned k, std::size_t trials,
                               std::uint64_t seed) {
  check_nonnegative(n);
  if (trials < 2) throw std::invalid_argument("moment_experiment needs at least 2 trials");
  if (ensemble != Ensemble::Simple && ensemble != Ensemble::Nonsimple) {
    throw std::invalid_argument("moments support the simple and nonsimple ensembles only");
  }
  if (ensemble == Ensemble::Nonsimple && n > kSpectralDenseCap) {
    throw CapacityError("nonsimple dense spectral level", kSpectralDenseCap, n);
  }
  if (ensemble == Ensemble::Simple && n > 500) throw CapacityError("simple moment level", 500, n);

  const double dim = static_cast<double>(dimension_for_levels(n));
  std::vector<double> normalized(trials);
  std::vector<double> squared(trials);
  for_each_trial(trials, [&](std::size_t t) {
    RngState rng = RngState::for_trial(seed, t);
    double tr = 0.0;
    if (ensemble == Ensemble::Simple) {
      tr = trace_power_simple(sample_simple(n, rng), k);
    } else {
      tr = trace_power_dense(materialize(sample_nonsimple(n, rng)), k);
    }
    normalized[t] = tr / dim;
    squared[t] = tr * tr;
  });

  MomentReport r;
  r.k = k;
  r.trials = trials;
  r.mean_normalized_trace = stats::mean(normalized);
  r.second_moment = stats::mean(squared);
  r.std_error = stats::standard_error(normalized);
  r.second_moment_std_error = stats::standard_error(squared);
  return r;
}

double clt_statistic(const SimpleButterfly& b, unsigned k) {
  const int n = b.levels();
  if (n < 1) throw std::invalid_argument("CLT statistic needs n >= 1");
  double sum = 0.0;
  for (const Angle theta : b.angles()) {
    const double c = std::cos(static_cast<double>(k) * theta.radians());
    sum += std::log(c * c);
  }
  return (sum + static_cast<double>(n) * std::numbers::ln2) / static_cast<double>(n);
}

CltResult clt_failure_statistic(int n, unsigned k, std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("CLT statistic needs n >= 1");
  if (n > 100'000'000) throw CapacityError("CLT level", 100'000'000, n);
  CltResult result;
  result.values.resize(trials);
  std::vector<std::size_t> resamples(trials, 0);
  for_each_trial(trials, [&](std::size_t t) {
    RngState rng = RngState::for_trial(seed, t);
    std::vector<Angle> angles(static_cast<std::size_t>(n));
    for (auto& a : angles) {
      a = uniform_angle(rng);
      while (std::abs(std::cos(static_cast<double>(k) * a.radians())) < 1e-300) {
        a = uniform_angle(rng);
        ++resamples[t];
      }
    }
    result.values[t] = clt_statistic(SimpleButterfly(std::move(angles)), k);
  });
  for (std::size_t r : resamples) result.degenerate_resamples += r;
  return result;
}

std::vector<double> pair_variables(const SimpleButterfly& b) {
  const auto angles = b.angles();
  double total = 0.0;
  for (const Angle a : angles) total += a.radians();
  std::vector<double> x(angles.size());
  if (x.empty()) return x;
  x[0] = std::cos(total);
  for (std::size_t j = 1; j < angles.size(); ++j) x[j] = std::cos(total - 2.0 * angles[j].radians());
  return x;
}

std::vector<double> PairSamples::column(int j) const {
  std::vector<double> c(trials);
  for (std::size_t t = 0; t < trials; ++t) c[t] = at(t, j);
  return c;
}

PairSamples pair_variable_distribution(int n, std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("pair variables need n >= 1");
  PairSamples s;
  s.n = n;
  s.trials = trials;
  s.x.resize(trials * static_cast<std::size_t>(n));
  for_each_trial(trials, [&](std::size_t t) {
    RngState rng = RngState::for_trial(seed, t);
    const auto x = pair_variables(sample_simple(n, rng));
    std::copy(x.begin(), x.end(), s.x.begin() + static_cast<std::ptrdiff_t>(t * x.size()));
  });
  return s;
}

std::vector<SpectrumRow> spectrum_cloud(Ensemble ensemble, int n, std::size_t trials,
                                        std::uint64_t seed) {
  check_nonnegative(n);
  switch (ensemble) {
    case Ensemble::Simple:
    case Ensemble::Iid:
      if (n > kSpectrumOutputCap) throw CapacityError("spectrum output level", kSpectrumOutputCap, n);
      break;
    case Ensemble::Nonsimple:
    case Ensemble::Haar:
      if (n > kSpectralDenseCap) throw CapacityError("dense spectral level", kSpectralDenseCap, n);
      break;
  }
  if (ensemble == Ensemble::Iid && n < 1) throw std::invalid_argument("iid ensemble needs n >= 1");

  const std::size_t dim = dimension_for_levels(n);
  std::vector<double> phases(trials * dim);
  for_each_trial(trials, [&](std::size_t t) {
    RngState rng = RngState::for_trial(seed, t);
    std::vector<double> p;
    switch (ensemble) {
      case Ensemble::Simple: p = eigenvalues_simple(sample_simple(n, rng)).eigen_args; break;
      case Ensemble::Nonsimple: p = eigenvalues_dense(materialize(sample_nonsimple(n, rng))).eigen_args; break;
      case Ensemble::Haar: p = eigenvalues_dense(materialize(sample_haar(dim, rng))).eigen_args; break;
      case Ensemble::Iid:
        p.reserve(dim);
        for (std::size_t i = 0; i < dim / 2; ++i) {
          const Angle a = uniform_angle(rng);
          p.push_back(a.radians());
          p.push_back((-a).radians());
        }
        std::sort(p.begin(), p.end());
        break;
    }
    std::copy(p.begin(), p.end(), phases.begin() + static_cast<std::ptrdiff_t>(t * dim));
  });

  std::vector<SpectrumRow> rows(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) rows[i] = {i / dim, phases[i]};
  return rows;
}

}  // namespace rbm
