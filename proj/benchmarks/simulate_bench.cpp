#include <benchmark/benchmark.h>

#include "bandit/oracle.hpp"
#include "bandit/simulate.hpp"

namespace {

using namespace bandit;

void BM_RunOnceTwoArmed(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto nu = instance_thm5(0.5).first;
  const auto cps = default_checkpoints(n);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_once(TwoArmedThresholdConfig{0.0, 0.5}, nu, n, cps, 3, rep++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunOnceTwoArmed)->Arg(1000)->Arg(100000);

void BM_RunOnceFullInfo(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto nu = instance_thm5(0.5).first;
  const auto cps = default_checkpoints(n);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_once(FullInfoGreedyConfig{}, nu, n, cps, 3, rep++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunOnceFullInfo)->Arg(100000);

void BM_RunMany(benchmark::State& state) {
  const BanditInstance inst({Gaussian{0.0, 1.0}, Gaussian{-0.5, 1.0}, Gaussian{-1.0, 1.0}});
  const std::vector<std::uint64_t> cps = {1000};
  BatchOptions options;
  options.workers = static_cast<unsigned>(state.range(0));
  options.keep_records = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_many(PotentialConfig{0.0, 0.5, PotentialSpec::quadratic()}, inst, 1000, 200, cps, 1, options));
  }
}
BENCHMARK(BM_RunMany)->Arg(1)->Arg(4)->UseRealTime();

void BM_ExactRegret(benchmark::State& state) {
  const BanditInstance inst({BernoulliShifted{0.75, -0.75}, BernoulliShifted{0.5, -0.75},
                             BernoulliShifted{0.25, -0.75}});
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_regret(PotentialConfig{0.0, 0.25, PotentialSpec::quadratic()}, inst, n));
  }
}
BENCHMARK(BM_ExactRegret)->Arg(8)->Arg(12);

}  // namespace
