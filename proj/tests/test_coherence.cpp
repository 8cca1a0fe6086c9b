#include "oracles.hpp"

#include "rbm/coherence.hpp"
#include "rbm/error.hpp"
#include "rbm/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rbm;

namespace {

Matrix random_matrix(Eigen::Index r, Eigen::Index c, RngState& rng) {
  Matrix a(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) a(i, j) = standard_normal(rng);
  return a;
}

// Column-space projector diagonal: max_j (A (A^T A)^{-1} A^T)_jj, in long double.
double projector_coherence(const Matrix& a) {
  const oracle::LMatrix l = a.cast<long double>();
  const oracle::LMatrix g = (l.transpose() * l).inverse();
  long double best = 0;
  for (Eigen::Index j = 0; j < l.rows(); ++j) best = std::max(best, (l.row(j) * g * l.row(j).transpose())(0, 0));
  return static_cast<double>(best);
}

}  // namespace

TEST_SUITE("coherence") {

TEST_CASE("thin_qr of identity columns and of 2 e1") {
  const Matrix a = Matrix::Identity(8, 3);
  const auto f = thin_qr(a);
  CHECK(oracle::max_abs_diff(f.q, a) < 1e-15);
  CHECK(oracle::max_abs_diff(f.r, Matrix::Identity(3, 3)) < 1e-15);

  Matrix e(5, 1);
  e.setZero();
  e(0, 0) = 2.0;
  const auto g = thin_qr(e);
  CHECK(g.q(0, 0) == doctest::Approx(1.0));
  CHECK(g.q.col(0).tail(4).norm() < 1e-15);
  CHECK(g.r(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("thin_qr reconstruction and orthonormality on 1000 instances") {
  RngState rng(1);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index rows = 10 + t % 55;
    const Eigen::Index cols = 1 + t % 10;
    const Matrix a = random_matrix(rows, cols, rng);
    const auto f = thin_qr(a);
    REQUIRE(f.q.rows() == rows);
    REQUIRE(f.q.cols() == cols);
    REQUIRE(oracle::gram_error(f.q) < 1e-10);
    REQUIRE((f.q * f.r - a).cwiseAbs().maxCoeff() < 1e-10 * a.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < cols; ++i) REQUIRE(f.r(i, i) > 0.0);
    REQUIRE(f.r.triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0.0));
  }
  const Matrix a = random_matrix(64, 10, rng);
  const auto f = thin_qr(a);
  CHECK(oracle::gram_error(f.q) < 1e-10);
  CHECK((f.q * f.r - a).norm() < 1e-10 * a.norm());
}

TEST_CASE("thin_qr rank deficiency and shape errors") {
  Matrix a(6, 3);
  a.setZero();
  a.col(0).setOnes();
  a.col(1).setOnes();
  a(0, 2) = 1.0;
  CHECK_THROWS_AS(thin_qr(a), RankDeficientError);
  Matrix z = Matrix::Zero(4, 2);
  z(0, 0) = 1.0;
  CHECK_THROWS_AS(thin_qr(z), RankDeficientError);
  CHECK_THROWS_AS(coherence(z), RankDeficientError);
  CHECK_THROWS_AS(thin_qr(Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(thin_qr(Matrix(3, 0)), DimensionError);
}

TEST_CASE("coherence examples and basis invariance") {
  CHECK(coherence(Matrix::Identity(16, 4)) == doctest::Approx(1.0));

  RngState rng(2);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(64, 6, rng);
    Matrix s = random_matrix(6, 6, rng).triangularView<Eigen::Upper>();
    for (int i = 0; i < 6; ++i) s(i, i) = 1.0 + std::abs(s(i, i));
    const double c = coherence(a);
    CHECK(std::abs(coherence(a * s) - c) < 1e-10);
    CHECK(std::abs(projector_coherence(a) - c) < 1e-10);
    CHECK(c >= 6.0 / 64 - 1e-12);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("make_hilbert entries and coherence") {
  const Matrix h = make_hilbert(3, 4);
  CHECK(h.rows() == 8);
  CHECK(h(0, 0) == 1.0);
  CHECK(h(1, 2) == 0.25);
  CHECK(h(7, 3) == doctest::Approx(1.0 / 11));
  CHECK(coherence(make_hilbert(9, 100)) >= 0.99);
  CHECK_THROWS_AS(make_hilbert(2, 5), DimensionError);
}

TEST_CASE("make_randn_test structure, coherence 1 and marginals") {
  RngState rng(3);
  const Matrix a = make_randn_test(9, 100, rng);
  CHECK(a(0, 0) != 0.0);
  CHECK(a.col(0).tail(511).isZero(0.0));
  CHECK(std::abs(coherence(a) - 1.0) < 1e-10);

  std::vector<double> pooled;
  while (pooled.size() < 100000) {
    const Matrix b = make_randn_test(10, 2, rng);
    for (Eigen::Index i = 0; i < b.rows(); ++i) pooled.push_back(b(i, 1));
  }
  CHECK(std::abs(stats::mean(pooled)) < 3.0 / std::sqrt(double(pooled.size())));
  const double sd = stats::sample_std(pooled);
  // Var of the sample variance is about 2 / n for normal data.
  CHECK(std::abs(sd * sd - 1.0) < 3.0 * std::sqrt(2.0 / pooled.size()));
  CHECK_THROWS_AS(make_randn_test(3, 0, rng), DimensionError);
}

TEST_CASE("matrix names") {
  CHECK(parse_test_matrix("Hilbert") == TestMatrix::Hilbert);
  CHECK(parse_test_matrix("RANDN") == TestMatrix::Randn);
  CHECK_THROWS_AS(parse_test_matrix("lotkin"), std::invalid_argument);
}

TEST_CASE("experiment: bounds, column norms, determinism, summary") {
  CoherenceConfig cfg;
  cfg.matrix = TestMatrix::Randn;
  cfg.randomizer = RandomizerKind::Hbdct;
  cfg.n = 6;
  cfg.m = 5;
  cfg.trials = 40;
  cfg.seed = 99;
  const auto a = coherence_experiment(cfg);
  const auto b = coherence_experiment(cfg);
  REQUIRE(a.trials.size() == 40);
  std::vector<double> v;
  for (std::size_t t = 0; t < 40; ++t) {
    CHECK(a.trials[t].value == b.trials[t].value);
    CHECK(a.trials[t].seed == 99 + t);
    CHECK(a.trials[t].value >= 5.0 / 64 - 1e-12);
    CHECK(a.trials[t].value <= 1.0 + 1e-12);
    v.push_back(a.trials[t].value);
  }
  CHECK(a.summary.sample_mean == doctest::Approx(stats::mean(v)));
  CHECK(a.summary.sample_std == doctest::Approx(stats::sample_std(v)));
  CHECK(a.summary.trials == 40);

  // Fixed base: every trial sees the same matrix, so a zero-randomization check is
  // replaced by recomputing one trial directly.
  cfg.fix_base = true;
  const auto f = coherence_experiment(cfg);
  RngState base_rng(splitmix64(99));
  const Matrix base = make_randn_test(6, 5, base_rng);
  RngState trial_rng = RngState::for_trial(99, 3);
  const auto omega = sample_randomizer(RandomizerKind::Hbdct, 6, trial_rng);
  CHECK(f.trials[3].value == coherence(omega.randomize_columns(base)));
  CHECK(f.trials[3].value != a.trials[3].value);
}

TEST_CASE("randomization preserves column norms") {
  RngState rng(4);
  const Matrix h = make_hilbert(8, 20);
  for (auto kind : {RandomizerKind::Hbdct, RandomizerKind::Rbdct, RandomizerKind::Rdct, RandomizerKind::Haar}) {
    const Matrix w = sample_randomizer(kind, 8, rng).randomize_columns(h);
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      CHECK(std::abs(w.col(j).norm() - h.col(j).norm()) <= 1e-12 * h.col(j).norm());
    }
  }
}

TEST_CASE("experiment errors") {
  CoherenceConfig cfg;
  cfg.n = 3;
  cfg.m = 9;
  CHECK_THROWS_AS(coherence_experiment(cfg), DimensionError);
  cfg.m = 2;
  cfg.trials = 0;
  CHECK_THROWS_AS(coherence_experiment(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.n = 13;
  cfg.randomizer = RandomizerKind::Haar;
  CHECK_THROWS_AS(coherence_experiment(cfg), CapacityError);
}

}
