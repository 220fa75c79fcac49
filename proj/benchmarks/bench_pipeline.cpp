#include "oslpp/graph.hpp"
#include "oslpp/pipeline.hpp"
#include "oslpp/synth.hpp"

#include <benchmark/benchmark.h>

namespace {

// Full runs at growing sample counts; per-class size sets n_s + n_t.
void BM_Run(benchmark::State& state) {
  const oslpp::SynthConfig cfg{10, 5, 128, state.range(0), 1.0, 0.3, 3.0, 0};
  const auto data = oslpp::generate(cfg);
  const oslpp::Hyperparams hp{64, 32, 10, cfg.per_class * cfg.n_unknown / 2, 0};
  for (auto _ : state) benchmark::DoNotOptimize(oslpp::run(data.source, data.target, hp));
  state.counters["n"] = static_cast<double>(data.source.features.rows() +
                                            data.target.features.rows());
}
BENCHMARK(BM_Run)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_LearnProjection(benchmark::State& state) {
  const oslpp::SynthConfig cfg{10, 5, 64, state.range(0), 1.0, 0.3, 3.0, 0};
  const auto data = oslpp::generate(cfg);
  const std::vector<oslpp::TargetState> states(
      static_cast<std::size_t>(data.target.features.rows()), oslpp::TargetState::uncertain());
  const auto g = oslpp::build_similarity(data.source.labels, states);
  Eigen::MatrixXd x(g.participant_count(), cfg.dim);
  x << data.source.features.values(), data.target.features.values();
  for (auto _ : state) benchmark::DoNotOptimize(oslpp::learn_projection(x, g, 32));
}
BENCHMARK(BM_LearnProjection)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
