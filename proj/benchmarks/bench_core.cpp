#include <benchmark/benchmark.h>

#include "levinlab/costgraph.hpp"
#include "levinlab/mixture.hpp"
#include "levinlab/refmachine.hpp"
#include "levinlab/search.hpp"

using namespace levinlab;

namespace {

void BM_EnumeratePrograms(benchmark::State& state) {
  const auto bits = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    std::size_t n = 0;
    for_each_program(bits, [&](const Program&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumeratePrograms)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ValidateStrings(benchmark::State& state) {
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    std::size_t n = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
      n += is_valid_program(BitString::from_uint(v, bits));
    }
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_ValidateStrings)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

// "+[+.]" runs until the cell wraps: about 770 steps.
const Program kAlternating = decode(BitString("0010 0100 0010 0111 0101 1111"));

void BM_RunTraced(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(kAlternating, BitString(), state.range(0)));
  }
}
BENCHMARK(BM_RunTraced)->Arg(64)->Arg(1024);

void BM_RunUntraced(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_untraced(kAlternating, BitString(), state.range(0)));
  }
}
BENCHMARK(BM_RunUntraced)->Arg(64)->Arg(1024);

void BM_BuildGraph(benchmark::State& state) {
  const RunResult r = run(kAlternating, BitString(), state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tally(build_graph(r.trace, 0)));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(64)->Arg(1024);

void BM_TallyTrace(benchmark::State& state) {
  const RunResult r = run(kAlternating, BitString(), state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tally_trace(r.trace, 0));
  }
}
BENCHMARK(BM_TallyTrace)->Arg(64)->Arg(1024);

void BM_RunTable(benchmark::State& state) {
  const auto budget = EnumerationBudget::fixed(static_cast<std::uint32_t>(state.range(0)), 256);
  for (auto _ : state) {
    const RunTable t = RunTable::build(budget);
    benchmark::DoNotOptimize(t.prior(BitString("1")));
  }
}
BENCHMARK(BM_RunTable)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_LevinSearch(benchmark::State& state) {
  SearchOptions opt;
  opt.units = UnitSystem::natural();
  const Goal goal = Goal::exact_output(BitString("11"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(levin_search(goal, static_cast<Metric>(state.range(0)), 32, opt));
  }
}
BENCHMARK(BM_LevinSearch)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
