#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "prox/kernels.hpp"
#include "prox/rng.hpp"

namespace {

using namespace prox;

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.gaussian();
  return v;
}

void bm_dot_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::dot(a.data(), b.data(), n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n * 2 * sizeof(double)));
}

void bm_dot_parallel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::par::dot(a.data(), b.data(), n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n * 2 * sizeof(double)));
}

void bm_axpby_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::serial::axpby(1.5, a.data(), -0.5, b.data(), out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_axpby_parallel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::par::axpby(1.5, a.data(), -0.5, b.data(), out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_matvec_serial(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 4 * m;
  const auto mat = random_vec(m * n, 3);
  const auto x = random_vec(n, 4);
  std::vector<double> y(m);
  for (auto _ : state) {
    kernels::serial::matvec(mat.data(), m, n, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_matvec_parallel(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 4 * m;
  const auto mat = random_vec(m * n, 3);
  const auto x = random_vec(n, 4);
  std::vector<double> y(m);
  for (auto _ : state) {
    kernels::par::matvec(mat.data(), m, n, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_soft_threshold_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::serial::soft_threshold(x.data(), 0.3, out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_soft_threshold_parallel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::par::soft_threshold(x.data(), 0.3, out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(bm_dot_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_dot_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_axpby_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_axpby_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_matvec_serial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(bm_matvec_parallel)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(bm_soft_threshold_serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_soft_threshold_parallel)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
