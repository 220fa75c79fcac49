#include "oslpp/numerics.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

Eigen::MatrixXd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

void BM_SolveGev(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd x = gaussian(rng, n, n);
  const Eigen::MatrixXd a = x + x.transpose();
  const Eigen::MatrixXd y = gaussian(rng, n, n);
  Eigen::MatrixXd b = y * y.transpose() / static_cast<double>(n);
  b.diagonal().array() += 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(oslpp::solve_gev(a, b, n / 4 + 1));
}
BENCHMARK(BM_SolveGev)->Arg(16)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PairwiseSqDists(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd x = gaussian(rng, n, 64);
  for (auto _ : state) benchmark::DoNotOptimize(oslpp::pairwise_sq_dists(x, x));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_PairwiseSqDists)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FitPca(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd x = gaussian(rng, n, 256);
  for (auto _ : state) benchmark::DoNotOptimize(oslpp::fit_pca(x, 64));
}
BENCHMARK(BM_FitPca)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
