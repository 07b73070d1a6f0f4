#include <random>

#include <benchmark/benchmark.h>

#include "pherm/kernels.hpp"

using namespace pherm;

namespace {

LaurentMatrix sample_matrix(int n, int bw) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  LaurentMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<cplx> c(2 * bw + 1);
      for (auto& x : c) x = {nd(rng), nd(rng)};
      b(i, j) = FracLaurent(1, -bw, c);
    }
  return b + mat_para_conj(b);
}

template <auto Fn>
void eval_uniform(benchmark::State& st) {
  const LaurentMatrix a = sample_matrix(static_cast<int>(st.range(0)), 8);
  const int K = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, K, 1, -kPi, 0.5));
}

template <auto Fn>
void eval_nodes(benchmark::State& st) {
  const LaurentMatrix a = sample_matrix(static_cast<int>(st.range(0)), 8);
  const auto thetas = grid_nodes(static_cast<int>(st.range(1)), 1, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, thetas));
}

template <auto Fn>
void eig_nodes(benchmark::State& st) {
  const LaurentMatrix a = sample_matrix(static_cast<int>(st.range(0)), 8);
  const auto samples = kernels::serial::eval_uniform(a, static_cast<int>(st.range(1)), 1, -kPi, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(samples));
}

}  // namespace

#define PHERM_BENCH(name, ns) \
  BENCHMARK(name<kernels::ns::name>)->Name(#name "/" #ns)->Args({4, 1024})->Args({8, 4096})->Unit(benchmark::kMicrosecond)

PHERM_BENCH(eval_uniform, serial);
PHERM_BENCH(eval_uniform, omp);
PHERM_BENCH(eval_nodes, serial);
PHERM_BENCH(eval_nodes, omp);
PHERM_BENCH(eig_nodes, serial);
PHERM_BENCH(eig_nodes, omp);

BENCHMARK_MAIN();
