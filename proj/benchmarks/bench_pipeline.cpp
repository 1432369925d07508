#include <benchmark/benchmark.h>

#include "qmaxent/backward.hpp"
#include "qmaxent/forward.hpp"
#include "qmaxent/preselect.hpp"
#include "qmaxent/synth.hpp"

namespace {

using namespace qmaxent;

const Dataset& example2_data() {
  static const Dataset data = generate(example2_spec(1));
  return data;
}

Problem example2_problem() { return Problem(make_system(example2_data(), MeasureMode::uniform)); }

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate(example2_spec(1)));
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

// Fresh problem per iteration so the alpha cache fill is included.
void BM_Preselect(benchmark::State& state) {
  for (auto _ : state) {
    const Problem p = example2_problem();
    benchmark::DoNotOptimize(preselect(p));
  }
}
BENCHMARK(BM_Preselect)->Unit(benchmark::kMillisecond);

void BM_ScoreCandidates(benchmark::State& state) {
  const Problem p = example2_problem();
  const PreselectReport pool = preselect(p);
  BiorthState s = BiorthState::empty(p.rows());
  for (Index j = 0; j < static_cast<Index>(state.range(0)); ++j) s = extend(std::move(s), p, pool.pool[j]);
  for (auto _ : state) benchmark::DoNotOptimize(score_candidates(s, p, pool.pool));
}
BENCHMARK(BM_ScoreCandidates)->Arg(0)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_FitForward(benchmark::State& state) {
  const Problem p = example2_problem();
  const PreselectReport pool = preselect(p);
  const StopRule stop = StopRule::from_sigma(1.1, *example2_data().sigma, p.measure());
  for (auto _ : state) benchmark::DoNotOptimize(fit_forward(p, stop, std::span<const Index>(pool.pool)));
}
BENCHMARK(BM_FitForward)->Unit(benchmark::kMillisecond);

void BM_Remove(benchmark::State& state) {
  const Problem p = example2_problem();
  const PreselectReport pool = preselect(p);
  const BiorthState s = fit_forward(p, StopRule{1.0, 0.0, Index{10}}, std::span<const Index>(pool.pool)).state;
  for (auto _ : state) benchmark::DoNotOptimize(remove(s, p, 0));
}
BENCHMARK(BM_Remove)->Unit(benchmark::kMicrosecond);

void BM_Prune(benchmark::State& state) {
  const Problem p = example2_problem();
  const PreselectReport pool = preselect(p);
  const Vector& sigma = *example2_data().sigma;
  const BiorthState s =
      fit_forward(p, StopRule::from_sigma(1.1, sigma, p.measure()), std::span<const Index>(pool.pool)).state;
  const StopRule stop = StopRule::from_sigma(2.0, sigma, p.measure());
  for (auto _ : state) benchmark::DoNotOptimize(prune(s, p, stop));
}
BENCHMARK(BM_Prune)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
