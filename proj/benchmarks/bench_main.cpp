#include <benchmark/benchmark.h>

#include <vector>

#include "fcucb/estimators.hpp"
#include "fcucb/oracle.hpp"
#include "fcucb/policy.hpp"
#include "fcucb/problem.hpp"
#include "fcucb/rng.hpp"

using namespace fcucb;

namespace {

ProblemInstance search_instance(std::size_t k, std::size_t max_size) {
  std::vector<UnderlyingDistribution> arms;
  for (std::size_t i = 0; i < k; ++i) {
    arms.push_back(UnderlyingDistribution::poisson(1.0 + static_cast<double>(i)));
  }
  return ProblemInstance(std::move(arms), ActionSpace::all_subsets_up_to(k, max_size),
                         FilterModel::binomial(DetectionModel::inverse_size(max_size)));
}

void BM_ExhaustiveOracle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto inst = search_instance(k, k / 2);
  std::vector<double> values(k);
  for (std::size_t i = 0; i < k; ++i) values[i] = 0.1 * static_cast<double>(i % 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExhaustiveOracle{}.argmax(values, inst.reward()));
  }
  state.counters["combinations"] = static_cast<double>(inst.space().size());
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(6)->Arg(10)->Arg(14);

ObservationHistory filled_history(std::size_t n) {
  StreamFactory streams(3);
  auto rng = streams.stream({0, 0, 0, StreamPurpose::Outcome});
  const auto arm = UnderlyingDistribution::poisson(2.0);
  ObservationHistory h;
  for (std::size_t t = 1; t <= n; ++t) {
    const auto x = static_cast<std::uint64_t>(sample_true_outcome(arm, rng));
    h.record(static_cast<double>(binomial_thin(x, 0.5, rng)), 0.5, t);
  }
  return h;
}

void BM_FilteredTruncatedEstimate(benchmark::State& state) {
  const auto h = filled_history(static_cast<std::size_t>(state.range(0)));
  const auto spec = EstimatorSpec::filtered_truncated(3.0, 0.5);
  const auto level = Confidence::at_round(static_cast<Round>(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate(spec, h, level));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FilteredTruncatedEstimate)->RangeMultiplier(10)->Range(100, 100'000)->Complexity();

void BM_PolicyStep(benchmark::State& state) {
  const auto inst = search_instance(static_cast<std::size_t>(state.range(0)), 2);
  const StreamFactory streams(7);
  for (auto _ : state) {
    state.PauseTiming();
    auto policy = make_robust_fcucb(inst, EstimatorSpec::filtered_truncated(10.0, 0.5));
    state.ResumeTiming();
    for (Round t = 1; t <= 1000; ++t) benchmark::DoNotOptimize(step(*policy, inst, t, streams, 0));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_PolicyStep)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
