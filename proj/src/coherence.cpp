#include "rbm/coherence.hpp"

#include "rbm/error.hpp"
#include "rbm/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace rbm {

ThinQr thin_qr(const Matrix& a, double rank_tol) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (cols == 0) throw DimensionError("thin QR needs at least one column");
  if (rows < cols) {
    throw DimensionError("thin QR needs rows >= columns, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  ThinQr out;
  out.r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  out.q = qr.householderQ() * Matrix::Identity(rows, cols);

  const double threshold = rank_tol * a.norm();
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double d = out.r(i, i);
    if (std::abs(d) <= threshold) {
      throw RankDeficientError("matrix is rank deficient: |R(" + std::to_string(i) + "," +
                               std::to_string(i) + ")| = " + std::to_string(std::abs(d)));
    }
    if (d < 0.0) {
      out.r.row(i) *= -1.0;
      out.q.col(i) *= -1.0;
    }
  }
  return out;
}

double coherence(const Matrix& a) {
  const ThinQr f = thin_qr(a, 0.0);
  return f.q.rowwise().squaredNorm().maxCoeff();
}

Matrix make_hilbert(int n, std::size_t m) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative");
  const std::size_t rows = dimension_for_levels(n);
  if (m < 1 || m > rows) throw DimensionError("hilbert needs 1 <= M <= 2^n");
  Matrix h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  }
  return h;
}

Matrix make_randn_test(int n, std::size_t m, RngState& rng) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative");
  if (m < 1) throw DimensionError("randn test matrix needs M >= 1");
  const auto rows = static_cast<Eigen::Index>(dimension_for_levels(n));
  Matrix a = Matrix::Zero(rows, static_cast<Eigen::Index>(m));
  a(0, 0) = standard_normal(rng);
  for (Eigen::Index j = 1; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = standard_normal(rng);
  }
  return a;
}

std::string_view to_string(TestMatrix m) {
  return m == TestMatrix::Hilbert ? "hilbert" : "randn";
}

TestMatrix parse_test_matrix(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "hilbert") return TestMatrix::Hilbert;
  if (lower == "randn") return TestMatrix::Randn;
  throw std::invalid_argument("unknown matrix '" + std::string(name) + "' (expected hilbert or randn)");
}

CoherenceExperiment coherence_experiment(const CoherenceConfig& config) {
  if (config.n < 0) throw std::invalid_argument("level count must be nonnegative");
  if (config.trials < 1) throw std::invalid_argument("coherence experiment needs trials >= 1");
  if (config.m < 1 || config.m > dimension_for_levels(config.n)) {
    throw DimensionError("coherence experiment needs 1 <= M <= 2^n");
  }
  if (config.randomizer == RandomizerKind::Haar && config.n > kHaarCoherenceCap) {
    throw CapacityError("haar randomizer level", kHaarCoherenceCap, config.n);
  }
  if (config.n > 20) throw CapacityError("coherence level", 20, config.n);

  Matrix fixed_base;
  if (config.matrix == TestMatrix::Hilbert) {
    fixed_base = make_hilbert(config.n, config.m);
  } else if (config.fix_base) {
    RngState base_rng(splitmix64(config.seed));
    fixed_base = make_randn_test(config.n, config.m, base_rng);
  }
  const bool redraw_base = config.matrix == TestMatrix::Randn && !config.fix_base;

  CoherenceExperiment out;
  out.trials.resize(config.trials);
  for_each_trial(config.trials, [&](std::size_t t) {
    RngState rng = RngState::for_trial(config.seed, t);
    Matrix base;
    if (redraw_base) base = make_randn_test(config.n, config.m, rng);
    const Matrix& a = redraw_base ? base : fixed_base;
    const Randomizer omega = sample_randomizer(config.randomizer, config.n, rng);
    out.trials[t] = {coherence(omega.randomize_columns(a)), config.n, config.m, config.randomizer,
                     rng.seed()};
  });

  std::vector<double> values(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) values[t] = out.trials[t].value;
  out.summary = {config.randomizer, config.matrix,           config.n,
                 config.m,          config.trials,           stats::mean(values),
                 stats::sample_std(values)};
  return out;
}

}  // namespace rbm
