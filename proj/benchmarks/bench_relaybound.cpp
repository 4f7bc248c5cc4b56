#include <benchmark/benchmark.h>

#include <vector>

#include "relaybound/bounds.hpp"
#include "relaybound/concentration.hpp"
#include "relaybound/gap.hpp"
#include "relaybound/mi_verify.hpp"
#include "relaybound/numerics.hpp"

namespace {

using namespace relaybound;

void BM_SolveAstar(benchmark::State& state) {
  double k = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_astar(k));
    k = k < 10.0 ? k + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_SolveAstar);

void BM_GaussianCdfInv(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_cdf_inv(0.0009765625));
}
BENCHMARK(BM_GaussianCdfInv);

void BM_Bound(benchmark::State& state) {
  const auto kind = static_cast<BoundKind>(state.range(0));
  const ChannelParams p{ExtReal(40.0), ExtReal(3.0), 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_bound(p, kind));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Bound)->DenseRange(0, 2);

void BM_GapAtLimit(benchmark::State& state) {
  const ChannelParams p{ExtReal::infinity(), ExtReal::infinity(), 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(gap(p, Variant::tightened));
}
BENCHMARK(BM_GapAtLimit);

void BM_MaxGapSearch(benchmark::State& state) {
  GridSpec grid = GridSpec::defaults();
  grid.snr_values = GridSpec::log_spaced(1e-2, 1e6, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_gap_search(Variant::tightened, grid));
}
BENCHMARK(BM_MaxGapSearch)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_BoundaryAstar(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_astar(ExtReal(1000.0), ExtReal(999.0)));
    benchmark::DoNotOptimize(boundary_astar_by_bisection(1000.0, 999.0));
  }
}
BENCHMARK(BM_BoundaryAstar);

void BM_HalfspaceCheck(benchmark::State& state) {
  const ConcentrationParams p{100, 1.0, 0.1, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(halfspace_check(p));
}
BENCHMARK(BM_HalfspaceCheck);

void BM_MonteCarloCheck(benchmark::State& state) {
  const ConcentrationParams p{static_cast<int>(state.range(0)), 1.0, 0.1, 0.3};
  const SetDescriptor set = halfspace_for(p);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_check(p, set, 10'000, 1));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_MonteCarloCheck)->Arg(10)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_QuantizerRelay(benchmark::State& state) {
  const QuantizerRelay relay{static_cast<double>(state.range(0)), 1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_quantizer_relay(relay));
}
BENCHMARK(BM_QuantizerRelay)->Arg(1)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
