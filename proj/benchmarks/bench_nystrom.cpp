// Microbenchmarks comparing the two fixed-rank pipelines and their shared
// building blocks. Run with --benchmark_filter=... to narrow the set.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>

#include "nyqr/data_io.hpp"
#include "nyqr/kernel.hpp"
#include "nyqr/landmark.hpp"
#include "nyqr/nystrom.hpp"

namespace {

nyqr::DataMatrix random_points(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = gauss(rng);
  return nyqr::DataMatrix::dense(std::move(x));
}

nyqr::NystromPair make_pair(Eigen::Index n, Eigen::Index m) {
  const Eigen::MatrixXd k = nyqr::random_spsd(n, n, nyqr::RngSeed{7});
  const auto lm = nyqr::uniform_sample(n, m, nyqr::RngSeed{8});
  return nyqr::sample_columns(k, lm.indices);
}

void bm_standard(benchmark::State& state) {
  const auto pair = make_pair(state.range(0), state.range(1));
  const Eigen::Index r = state.range(1) / 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(nyqr::standard_nystrom(pair, r));
}

void bm_modified(benchmark::State& state) {
  const auto pair = make_pair(state.range(0), state.range(1));
  const Eigen::Index r = state.range(1) / 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(nyqr::modified_nystrom(pair, r));
}

void bm_evd_baseline(benchmark::State& state) {
  const Eigen::MatrixXd k = nyqr::random_spsd(state.range(0), state.range(0),
                                              nyqr::RngSeed{7});
  for (auto _ : state) benchmark::DoNotOptimize(nyqr::evd_baseline(k, 4));
}

void bm_kernel_matrix(benchmark::State& state) {
  const auto x = random_points(state.range(0), 16, 3);
  nyqr::KernelConfig cfg;
  cfg.bandwidth_c = nyqr::bandwidth_heuristic(x);
  for (auto _ : state)
    benchmark::DoNotOptimize(nyqr::build_kernel_matrix(x, cfg));
}

void bm_kmeans(benchmark::State& state) {
  const auto x = random_points(state.range(0), 16, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        nyqr::kmeans_landmarks(x, state.range(1), nyqr::RngSeed{11}));
}

}  // namespace

BENCHMARK(bm_standard)->Args({500, 8})->Args({1000, 8})->Args({2000, 10});
BENCHMARK(bm_modified)->Args({500, 8})->Args({1000, 8})->Args({2000, 10});
BENCHMARK(bm_evd_baseline)->Arg(500)->Arg(1000);
BENCHMARK(bm_kernel_matrix)->Arg(500)->Arg(1000);
BENCHMARK(bm_kmeans)->Args({1000, 8});

BENCHMARK_MAIN();
