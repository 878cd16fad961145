#include <benchmark/benchmark.h>

#include "stopgame/dynkin.hpp"
#include "stopgame/fixtures.hpp"
#include "stopgame/oracle.hpp"

using namespace stopgame;

namespace {

void BM_ValueFamiliesRational(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  FilteredSpace space = fixtures::binary(depth);
  Payoff payoff = fixtures::seeded_lipschitz_payoff(space, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_lower<Rat>(payoff, false));
    benchmark::DoNotOptimize(value_upper<Rat>(payoff, true));
  }
}
BENCHMARK(BM_ValueFamiliesRational)->Arg(2)->Arg(4)->Arg(6);

void BM_ValueFamiliesFloat(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  FilteredSpace space = fixtures::binary(depth);
  Payoff payoff = fixtures::seeded_lipschitz_payoff(space, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_lower<double>(payoff, false));
    benchmark::DoNotOptimize(value_upper<double>(payoff, true));
  }
}
BENCHMARK(BM_ValueFamiliesFloat)->Arg(2)->Arg(4)->Arg(6);

void BM_EnumerateStoppingTimes(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  FilteredSpace space = fixtures::binary(depth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(StoppingTimeSet::enumerate(space, 1000));
  }
}
BENCHMARK(BM_EnumerateStoppingTimes)->Arg(2)->Arg(3)->Arg(4);

void BM_OpenLoopGame(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  FilteredSpace space = fixtures::binary(depth);
  Payoff payoff = fixtures::seeded_table_payoff(space, 11);
  StoppingTimeSet set = StoppingTimeSet::enumerate(space, 1000);
  DynkinSpec<Rat> spec{value_lower<Rat>(payoff, false).values,
                       value_upper<Rat>(payoff, false).values, TieRule::kLow};
  for (auto _ : state) {
    benchmark::DoNotOptimize(open_loop_solve(set, spec, OpenLoopOrder::kInfSup));
  }
}
BENCHMARK(BM_OpenLoopGame)->Arg(2)->Arg(3);

void BM_JJDecomposition(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  FilteredSpace space = fixtures::binary(depth);
  Payoff payoff = fixtures::seeded_table_payoff(space, 11);
  const auto lower = value_lower<Rat>(payoff, false).values;
  const auto upper = value_upper<Rat>(payoff, false).values;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jj_decomposition(space, lower, upper));
  }
}
BENCHMARK(BM_JJDecomposition)->Arg(2)->Arg(4);

void BM_TypeIIMapEnumeration(benchmark::State& state) {
  FilteredSpace space = fixtures::binary(2);
  StoppingTimeSet set = StoppingTimeSet::enumerate(space, 1000);
  for (auto _ : state) {
    std::size_t count = 0;
    enumerate_strategy_maps(set, NaType::kTypeII, [&](const StrategyMap&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_TypeIIMapEnumeration);

void BM_BruteGameValues(benchmark::State& state) {
  FilteredSpace space = fixtures::chain(4);
  Payoff payoff = Payoff::abs_time_diff(space);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_game_values<Rat>(payoff));
  }
}
BENCHMARK(BM_BruteGameValues);

}  // namespace

BENCHMARK_MAIN();
