#include <benchmark/benchmark.h>

#include <random>

#include "foldloop/factory.hpp"
#include "foldloop/layout.hpp"
#include "foldloop/loopsim.hpp"
#include "foldloop/surface_code.hpp"
#include "foldloop/tableau.hpp"

using namespace foldloop;

static void BM_CheckRound(benchmark::State& state) {
  PatchSpec p = build_patch(static_cast<int>(state.range(0)), PatchKind::kFolded);
  ScheduledCircuit c = check_circuit(p);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    Tableau t(p.num_qubits());
    benchmark::DoNotOptimize(run_tableau(c, t, rng));
  }
}
BENCHMARK(BM_CheckRound)->Arg(3)->Arg(5)->Arg(9)->Arg(15);

static void BM_SwapSearch(benchmark::State& state) {
  TimingParams p;
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_search(SearchProtocol::kSwap, n, 8 * n, p));
}
BENCHMARK(BM_SwapSearch)->Arg(8)->Arg(16);

static void BM_RearrangeSearch(benchmark::State& state) {
  TimingParams p;
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_search(SearchProtocol::kRearrange, n, 8 * n, p));
}
BENCHMARK(BM_RearrangeSearch)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  TimingParams p;
  for (auto _ : state) benchmark::DoNotOptimize(pipeline_model(16, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Pipeline)->Arg(50)->Arg(500);

static void BM_Routable(benchmark::State& state) {
  std::vector<PatchCell> ps;
  for (int i = 0; i < 8; ++i) ps.push_back({i, Orientation::kXZ});
  LayerStackLayout l = generate_layout(LayoutKind::kHallway, ps, {6, 6, 1});
  std::vector<MergeRequest> reqs = {{0, 'Z', 7, 'Z'}, {1, 'X', 6, 'X'}, {2, 'Z', 5, 'X'}};
  for (auto _ : state) benchmark::DoNotOptimize(routable(l, reqs));
}
BENCHMARK(BM_Routable);

static void BM_VerifyFactory(benchmark::State& state) {
  FactoryCircuit c = ccz_factory_spec(FactoryVariant::kFolded);
  for (auto _ : state) benchmark::DoNotOptimize(verify_factory(c));
}
BENCHMARK(BM_VerifyFactory)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
