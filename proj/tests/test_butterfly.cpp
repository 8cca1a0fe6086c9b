#include "oracles.hpp"

#include "rbm/butterfly.hpp"
#include "rbm/error.hpp"
#include "rbm/kernels.hpp"
#include "rbm/reference.hpp"
#include "rbm/serialize.hpp"
#include "rbm/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

using namespace rbm;

namespace {

std::vector<double> random_vector(std::size_t n, RngState& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = standard_normal(rng);
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

SimpleButterfly simple_from(std::vector<double> radians) {
  std::vector<Angle> a;
  for (double r : radians) a.push_back(Angle::wrap(r));
  return SimpleButterfly(std::move(a));
}

NonSimpleButterfly nonsimple_zero(int n) {
  return NonSimpleButterfly(std::vector<Angle>(dimension_for_levels(n) - 1));
}

Eigen::VectorXd as_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST_SUITE("butterfly") {

TEST_CASE("n = 0 is the 1x1 identity") {
  RngState rng(1);
  const auto s = sample_simple(0, rng);
  CHECK(s.angles().empty());
  CHECK(materialize(s) == Matrix::Identity(1, 1));
  const auto t = sample_nonsimple(0, rng);
  CHECK(t.tree().empty());
  CHECK(materialize(t) == Matrix::Identity(1, 1));
  OpCounter oc;
  const std::vector<double> v{3.5};
  CHECK(apply_simple(s, v, oc) == v);
  CHECK(oc.multiplications == 0);
}

TEST_CASE("n = 1 is a rotation for both classes") {
  RngState rng(2);
  const auto s = sample_simple(1, rng);
  const double t = s.angles()[0].radians();
  Matrix r(2, 2);
  r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  CHECK(oracle::max_abs_diff(materialize(s), r) < 1e-15);
  const NonSimpleButterfly ns({s.angles()[0]});
  CHECK(oracle::max_abs_diff(materialize(ns), r) < 1e-15);
}

TEST_CASE("n = 2 simple is R(theta1) kron R(theta0)") {
  const auto b = simple_from({0.3, 1.9});
  auto rot = [](double t) {
    Matrix r(2, 2);
    r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    return r;
  };
  const Matrix r0 = rot(0.3), r1 = rot(1.9);
  Matrix kron(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) kron.block(2 * i, 2 * j, 2, 2) = r1(i, j) * r0;
  CHECK(oracle::max_abs_diff(materialize(b), kron) < 1e-15);
}

TEST_CASE("dense materialization is orthogonal with det 1") {
  RngState rng(3);
  for (int n = 1; n <= 5; ++n) {
    const Matrix s = materialize(sample_simple(n, rng));
    const Matrix t = materialize(sample_nonsimple(n, rng));
    CHECK(oracle::gram_error(s) < 1e-12);
    CHECK(oracle::gram_error(t) < 1e-12);
    CHECK(s.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("non-simple root block structure") {
  RngState rng(4);
  const auto b = sample_nonsimple(3, rng);
  const Matrix q = materialize(b);
  const std::vector<double> tree = oracle::radians_of(b.tree());
  // Children subtrees in heap order: node 2 -> {2, 4, 5}, node 3 -> {3, 6, 7}.
  const auto a = oracle::nonsimple_dense({tree[1], tree[3], tree[4]});
  const auto bb = oracle::nonsimple_dense({tree[2], tree[5], tree[6]});
  const double c = std::cos(tree[0]), s = std::sin(tree[0]);
  CHECK(oracle::max_abs_diff(q.topLeftCorner(4, 4), (c * a).eval()) < 1e-14);
  CHECK(oracle::max_abs_diff(q.topRightCorner(4, 4), (s * bb).eval()) < 1e-14);
  CHECK(oracle::max_abs_diff(q.bottomLeftCorner(4, 4), (-s * a).eval()) < 1e-14);
  CHECK(oracle::max_abs_diff(q.bottomRightCorner(4, 4), (c * bb).eval()) < 1e-14);
}

TEST_CASE("apply_simple: identity, quarter turn, all-ones norm, dense oracle") {
  {
    const auto b = simple_from({0, 0, 0});
    const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(apply_simple(b, v) == v);
  }
  {
    const auto b = simple_from({std::numbers::pi / 2});
    const auto w = apply_simple(b, std::vector<double>{1, 0});
    CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(-1.0));
  }
  RngState rng(5);
  const auto b = sample_simple(5, rng);
  const std::vector<double> ones(32, 1.0);
  const auto w = apply_simple(b, ones);
  CHECK(std::abs(norm(w) - 5.656854249492381) < 1e-12);
  const auto dense = oracle::simple_dense(oracle::radians_of(b.angles()));
  const Eigen::VectorXd expect = (dense * as_eigen(ones).cast<long double>()).cast<double>();
  CHECK(oracle::max_abs_diff(as_eigen(w), expect) < 1e-12);
}

TEST_CASE("apply_simple records n 2^(n+1) multiplications") {
  RngState rng(6);
  for (int n = 1; n <= 12; ++n) {
    OpCounter oc;
    apply_simple(sample_simple(n, rng), random_vector(dimension_for_levels(n), rng), oc);
    CHECK(oc.multiplications == std::uint64_t(n) << (n + 1));
  }
}

TEST_CASE("norm preservation") {
  RngState rng(7);
  for (int n = 1; n <= 10; ++n) {
    const auto v = random_vector(dimension_for_levels(n), rng);
    const double nv = norm(v);
    CHECK(std::abs(norm(apply_simple(sample_simple(n, rng), v)) - nv) <= 1e-12 * nv);
    CHECK(std::abs(norm(apply_nonsimple(sample_nonsimple(n, rng), v)) - nv) <= 1e-12 * nv);
  }
}

TEST_CASE("apply_simple_inverse") {
  RngState rng(8);
  const auto b = sample_simple(5, rng);
  const auto v = random_vector(32, rng);
  const auto back = apply_simple_inverse(b, apply_simple(b, v));
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(back[i] - v[i]));
  CHECK(err <= 1e-12 * norm(v));

  CHECK(apply_simple_inverse(simple_from({0, 0}), std::vector<double>{1, 2, 3, 4}) ==
        std::vector<double>{1, 2, 3, 4});

  const auto b4 = sample_simple(4, rng);
  const auto v4 = random_vector(16, rng);
  const auto dense = oracle::simple_dense(oracle::radians_of(b4.angles()));
  const auto bv = apply_simple(b4, v4);
  const Eigen::VectorXd expect = (dense.transpose() * as_eigen(bv).cast<long double>()).cast<double>();
  CHECK(oracle::max_abs_diff(as_eigen(apply_simple_inverse(b4, bv)), expect) < 1e-12);
}

TEST_CASE("dimension mismatch is rejected") {
  RngState rng(9);
  const auto b = sample_simple(3, rng);
  CHECK_THROWS_AS(apply_simple(b, std::vector<double>(7)), DimensionError);
  CHECK_THROWS_AS(apply_simple_inverse(b, std::vector<double>(9)), DimensionError);
  CHECK_THROWS_AS(apply_nonsimple(sample_nonsimple(3, rng), std::vector<double>(4)), DimensionError);
  OpCounter oc;
  CHECK_THROWS_AS(apply_simple_subsampled(b, std::vector<double>(4), 1, 1, oc), DimensionError);
  Matrix a(4, 2);
  CHECK_THROWS_AS(apply_columns(b, a), DimensionError);
}

TEST_CASE("subsampled: k = 0 is the full product") {
  RngState rng(10);
  const auto b = sample_simple(6, rng);
  const auto v = random_vector(64, rng);
  OpCounter oc;
  for (std::size_t j : {1u, 17u, 64u}) CHECK(apply_simple_subsampled(b, v, j, 0, oc) == apply_simple(b, v));
}

TEST_CASE("subsampled: n = 15, k = 13, j = 1 matches entries 1..4 bitwise") {
  RngState rng(11);
  const auto b = sample_simple(15, rng);
  const auto v = random_vector(dimension_for_levels(15), rng);
  const auto full = apply_simple(b, v);
  OpCounter oc;
  const auto block = apply_simple_subsampled(b, v, 1, 13, oc);
  REQUIRE(block.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(block[i] == full[i]);
  CHECK(oc.multiplications <= (std::uint64_t{1} << 16) * 3);
}

TEST_CASE("subsampled: exhaustive blocks at n = 6, k in {1,2,3}") {
  RngState rng(12);
  const auto b = sample_simple(6, rng);
  const auto v = random_vector(64, rng);
  const auto full = apply_simple(b, v);
  for (int k = 1; k <= 3; ++k) {
    const std::size_t m = std::size_t{64} >> k;
    for (std::size_t j = 1; j <= 64; ++j) {
      OpCounter oc;
      const auto block = apply_simple_subsampled(b, v, j, k, oc);
      const std::size_t first = (j - 1) / m * m;
      REQUIRE(block.size() == m);
      for (std::size_t i = 0; i < m; ++i) REQUIRE(block[i] == full[first + i]);
      CHECK(oc.multiplications <= (std::uint64_t{128} * (6 - k + 1)));
      CHECK(oc.multiplications == 128u * (6 - k + 1) - (std::uint64_t{2} << (6 - k)));
    }
  }
}

TEST_CASE("subsampled: out-of-range j or k") {
  RngState rng(13);
  const auto b = sample_simple(4, rng);
  const std::vector<double> v(16, 1.0);
  OpCounter oc;
  CHECK_THROWS_AS(apply_simple_subsampled(b, v, 0, 1, oc), std::out_of_range);
  CHECK_THROWS_AS(apply_simple_subsampled(b, v, 17, 1, oc), std::out_of_range);
  CHECK_THROWS_AS(apply_simple_subsampled(b, v, 1, 5, oc), std::out_of_range);
  CHECK_THROWS_AS(apply_simple_subsampled(b, v, 1, -1, oc), std::out_of_range);
  CHECK_NOTHROW(apply_simple_subsampled(b, v, 16, 4, oc));
}

TEST_CASE("apply_nonsimple: identity, all-ones norm, dense oracle, count") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(apply_nonsimple(nonsimple_zero(3), v) == v);

  RngState rng(14);
  const std::vector<double> ones(32, 1.0);
  CHECK(std::abs(norm(apply_nonsimple(sample_nonsimple(5, rng), ones)) - std::sqrt(32.0)) < 1e-12);

  for (int n = 1; n <= 5; ++n) {
    const auto b = sample_nonsimple(n, rng);
    const auto x = random_vector(dimension_for_levels(n), rng);
    OpCounter oc;
    const auto w = apply_nonsimple(b, x, oc);
    CHECK(oc.multiplications == std::uint64_t(n) << (n + 1));
    const auto dense = oracle::nonsimple_dense(oracle::radians_of(b.tree()));
    const Eigen::VectorXd expect = (dense * as_eigen(x).cast<long double>()).cast<double>();
    CHECK(oracle::max_abs_diff(as_eigen(w), expect) < 1e-12);
  }
}

TEST_CASE("materialize: cap and column semantics") {
  RngState rng(15);
  CHECK_THROWS_AS(materialize(sample_simple(13, rng)), CapacityError);
  CHECK_THROWS_AS(materialize(sample_simple(4, rng), 3), CapacityError);
  try {
    materialize(sample_nonsimple(13, rng));
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.limit() == 12);
  }
  const auto b = sample_simple(3, rng);
  const Matrix m = materialize(b);
  for (int i = 0; i < 8; ++i) {
    std::vector<double> e(8, 0.0);
    e[i] = 1.0;
    CHECK(as_eigen(apply_simple(b, e)) == m.col(i));
  }
}

TEST_CASE("level count validation") {
  RngState rng(16);
  CHECK_THROWS_AS(sample_simple(-1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_nonsimple(-1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_nonsimple(41, rng), CapacityError);
  // Long angle lists are fine for closed forms but cannot be applied.
  const auto huge = sample_simple(64, rng);
  CHECK(huge.levels() == 64);
  CHECK_THROWS_AS(apply_simple(huge, std::vector<double>(2)), CapacityError);
  CHECK_THROWS_AS(NonSimpleButterfly(std::vector<Angle>(4)), std::invalid_argument);
}

TEST_CASE("group law, inverse and level mismatch") {
  RngState rng(17);
  for (int n = 1; n <= 5; ++n) {
    const auto a = sample_simple(n, rng);
    const auto b = sample_simple(n, rng);
    const Matrix prod = materialize(a) * materialize(b);
    CHECK(oracle::max_abs_diff(prod, materialize(a.compose(b))) < 1e-12);
    CHECK(oracle::max_abs_diff(materialize(a.inverse()), materialize(a).transpose()) < 1e-12);
  }
  CHECK_THROWS_AS(sample_simple(2, rng).compose(sample_simple(3, rng)), DimensionError);
}

TEST_CASE("product angles stay iid uniform") {
  RngState rng(18);
  const auto beta = sample_simple(3, rng);
  constexpr std::size_t trials = 100000;
  std::vector<std::vector<double>> coords(3, std::vector<double>(trials));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = sample_simple(3, rng).compose(beta);
    for (int j = 0; j < 3; ++j) coords[j][t] = p.angles()[j].radians();
  }
  for (const auto& c : coords) {
    CHECK(stats::ks_statistic(c, [](double x) { return x / kTwoPi; }) < stats::ks_critical_1pct(trials));
  }
}

TEST_CASE("serial, OpenMP and recursive kernels agree bitwise") {
  RngState rng(19);
  for (int n : {1, 4, 9, 16}) {
    const auto b = sample_simple(n, rng);
    const auto nb = sample_nonsimple(n, rng);
    const auto v = random_vector(dimension_for_levels(n), rng);
    std::vector<double> cs, sn, tc, ts;
    for (const Angle a : b.angles()) {
      cs.push_back(a.cos());
      sn.push_back(a.sin());
    }
    for (const Angle a : nb.tree()) {
      tc.push_back(a.cos());
      ts.push_back(a.sin());
    }
    auto x1 = v, x2 = v, y1 = v, y2 = v;
    kernels::serial::simple_sweep({cs, sn}, x1);
    kernels::parallel::simple_sweep({cs, sn}, x2);
    kernels::serial::nonsimple_sweep({tc, ts}, n, y1);
    kernels::parallel::nonsimple_sweep({tc, ts}, n, y2);
    CHECK(x1 == x2);
    CHECK(y1 == y2);
    CHECK(x1 == reference::simple_recursive(b.angles(), v));
    CHECK(y1 == reference::nonsimple_recursive(nb, v));
    CHECK(x1 == apply_simple(b, v));
    CHECK(y1 == apply_nonsimple(nb, v));
  }
}

TEST_CASE("column application matches per-vector application") {
  RngState rng(20);
  const auto b = sample_simple(6, rng);
  const auto nb = sample_nonsimple(6, rng);
  Matrix a(64, 5);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = standard_normal(rng);
  Matrix s = a, t = a;
  apply_columns(b, s);
  apply_columns(nb, t);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const std::vector<double> col(a.col(j).data(), a.col(j).data() + a.rows());
    CHECK(as_eigen(apply_simple(b, col)) == s.col(j));
    CHECK(as_eigen(apply_nonsimple(nb, col)) == t.col(j));
  }
}

TEST_CASE("angle JSON round trip") {
  RngState rng(21);
  for (int n = 0; n <= 6; ++n) {
    const auto b = sample_simple(n, rng);
    const auto b2 = simple_from_json(to_json(b));
    CHECK(std::equal(b.angles().begin(), b.angles().end(), b2.angles().begin(), b2.angles().end()));
    const auto t = sample_nonsimple(n, rng);
    const auto t2 = nonsimple_from_json(to_json(t));
    CHECK(std::equal(t.tree().begin(), t.tree().end(), t2.tree().begin(), t2.tree().end()));
  }
  const auto parsed = simple_from_json(R"({"n": 2, "angles": [0.5, -1.0]})");
  CHECK(parsed.angles()[1].radians() == doctest::Approx(kTwoPi - 1.0));
  CHECK_THROWS_AS(simple_from_json(R"({"n": 2, "angles": [0.5]})"), std::invalid_argument);
  CHECK_THROWS_AS(simple_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(simple_from_json(R"({"angles": []})"), std::invalid_argument);
  CHECK_THROWS_AS(nonsimple_from_json(R"({"n": 2, "angles": [1, 2]})"), std::invalid_argument);
  CHECK_THROWS_AS(simple_from_json(R"({"n": 1, "angles": ["x"]})"), std::invalid_argument);
}

}
