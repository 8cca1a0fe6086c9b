// Serial reference vs serial sweep vs OpenMP sweep, plus column, Haar and DCT
// kernels. Run with --benchmark_filter to narrow.

#include "rbm/butterfly.hpp"
#include "rbm/dct.hpp"
#include "rbm/haar.hpp"
#include "rbm/kernels.hpp"
#include "rbm/reference.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace rbm;

namespace {

std::vector<double> gaussian(std::size_t n, RngState& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = standard_normal(rng);
  return v;
}

struct Table {
  std::vector<double> c, s;
  kernels::Rotations rot() const { return {c, s}; }
};

Table table_of(std::span<const Angle> angles) {
  Table t;
  for (const auto& a : angles) {
    t.c.push_back(a.cos());
    t.s.push_back(a.sin());
  }
  return t;
}

void BM_SimpleRecursive(benchmark::State& st) {
  RngState rng(1);
  const int n = static_cast<int>(st.range(0));
  const auto b = sample_simple(n, rng);
  const auto v = gaussian(b.dimension(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::simple_recursive(b.angles(), v));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(b.dimension()));
}

template <void (*Sweep)(kernels::Rotations, std::span<double>)>
void BM_SimpleSweep(benchmark::State& st) {
  RngState rng(1);
  const int n = static_cast<int>(st.range(0));
  const auto b = sample_simple(n, rng);
  const auto t = table_of(b.angles());
  const auto v = gaussian(b.dimension(), rng);
  auto x = v;
  for (auto _ : st) {
    x = v;
    Sweep(t.rot(), x);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(b.dimension()));
}

void BM_NonsimpleRecursive(benchmark::State& st) {
  RngState rng(2);
  const auto b = sample_nonsimple(static_cast<int>(st.range(0)), rng);
  const auto v = gaussian(b.dimension(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::nonsimple_recursive(b, v));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(b.dimension()));
}

template <void (*Sweep)(kernels::Rotations, int, std::span<double>)>
void BM_NonsimpleSweep(benchmark::State& st) {
  RngState rng(2);
  const int n = static_cast<int>(st.range(0));
  const auto b = sample_nonsimple(n, rng);
  const auto t = table_of(b.tree());
  const auto v = gaussian(b.dimension(), rng);
  auto x = v;
  for (auto _ : st) {
    x = v;
    Sweep(t.rot(), n, x);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(b.dimension()));
}

template <void (*Columns)(kernels::Rotations, Matrix&)>
void BM_SimpleColumns(benchmark::State& st) {
  RngState rng(3);
  const int n = static_cast<int>(st.range(0));
  const auto b = sample_simple(n, rng);
  const auto t = table_of(b.angles());
  const Matrix a0 = Matrix::Random(static_cast<Eigen::Index>(b.dimension()), 100);
  Matrix a = a0;
  for (auto _ : st) {
    a = a0;
    Columns(t.rot(), a);
    benchmark::ClobberMemory();
  }
}

void BM_Haar(benchmark::State& st) {
  RngState rng(4);
  const auto q = sample_haar(std::size_t{1} << st.range(0), rng);
  const auto v = gaussian(q.dimension(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(apply_haar(q, v));
}

void BM_DctFast(benchmark::State& st) {
  RngState rng(5);
  const DctPlan plan(std::size_t{1} << st.range(0));
  const auto v = gaussian(plan.size(), rng);
  std::vector<double> out(plan.size());
  for (auto _ : st) {
    plan.apply(v, out);
    benchmark::ClobberMemory();
  }
}

void BM_DctDirect(benchmark::State& st) {
  RngState rng(5);
  const auto v = gaussian(std::size_t{1} << st.range(0), rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::dct_direct(v));
}

}  // namespace

BENCHMARK(BM_SimpleRecursive)->DenseRange(8, 20, 4);
BENCHMARK(BM_SimpleSweep<kernels::serial::simple_sweep>)->Name("BM_SimpleSweepSerial")->DenseRange(8, 20, 4);
BENCHMARK(BM_SimpleSweep<kernels::parallel::simple_sweep>)->Name("BM_SimpleSweepOmp")->DenseRange(8, 20, 4);
BENCHMARK(BM_NonsimpleRecursive)->DenseRange(8, 20, 4);
BENCHMARK(BM_NonsimpleSweep<kernels::serial::nonsimple_sweep>)->Name("BM_NonsimpleSweepSerial")->DenseRange(8, 20, 4);
BENCHMARK(BM_NonsimpleSweep<kernels::parallel::nonsimple_sweep>)->Name("BM_NonsimpleSweepOmp")->DenseRange(8, 20, 4);
BENCHMARK(BM_SimpleColumns<kernels::serial::simple_columns>)->Name("BM_SimpleColumnsSerial")->Arg(9)->Arg(11);
BENCHMARK(BM_SimpleColumns<kernels::parallel::simple_columns>)->Name("BM_SimpleColumnsOmp")->Arg(9)->Arg(11);
BENCHMARK(BM_Haar)->DenseRange(6, 12, 2);
BENCHMARK(BM_DctFast)->DenseRange(6, 12, 2);
BENCHMARK(BM_DctDirect)->DenseRange(6, 12, 2);

BENCHMARK_MAIN();
