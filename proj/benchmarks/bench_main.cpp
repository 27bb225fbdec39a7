#include <benchmark/benchmark.h>

#include <complex>

#include "stmm/csi.hpp"
#include "stmm/modulation.hpp"
#include "stmm/numeric.hpp"
#include "stmm/oracle.hpp"
#include "stmm/reflection.hpp"

using namespace stmm;

namespace {

IncidenceGeometry geom() { return IncidenceGeometry(deg_to_rad(30.0), 0.0, 100.0, 30e9); }

void BM_ArrayFactorClosed(benchmark::State& st) {
  const CouplingParams p{geom(), {static_cast<int>(st.range(0)), static_cast<int>(st.range(0))}, 0.02};
  for (auto _ : st) benchmark::DoNotOptimize(array_factor_2d(p));
}
BENCHMARK(BM_ArrayFactorClosed)->Arg(32)->Arg(100)->Arg(200);

void BM_ArrayFactorDirect(benchmark::State& st) {
  const CouplingParams p{geom(), {static_cast<int>(st.range(0)), static_cast<int>(st.range(0))}, 0.02};
  for (auto _ : st) benchmark::DoNotOptimize(array_factor_direct(p));
}
BENCHMARK(BM_ArrayFactorDirect)->Arg(32)->Arg(100)->Arg(200);

void BM_OracleSimulate(benchmark::State& st) {
  const auto g = geom();
  CpmConfig c;
  c.symbol_time = symbol_time_for_kappa(1.0, 0.01, 30e9);
  const int side = static_cast<int>(st.range(0));
  LinkConfig l;
  l.total_bandwidth = occupied_bandwidth(c).hz / l.mu;
  WaveformScenario w{g, {side, side}, c, l, Architecture::B};
  w.oversampling = 16.0;
  w.duration_symbols = 64;
  w.channel = ChannelRealization::deterministic(g);
  const auto stream = SymbolStream::random(2, w.required_symbols(), 1);
  for (auto _ : st) benchmark::DoNotOptimize(simulate_rx(w, stream, 1));
}
BENCHMARK(BM_OracleSimulate)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CsiMonteCarlo(benchmark::State& st) {
  CsiErrorModel e;
  e.sigma_theta_sq = deg_to_rad(1.0) * deg_to_rad(1.0);
  e.mc_samples = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(csi_loss_factor(geom(), {100, 100}, 0.01, e));
}
BENCHMARK(BM_CsiMonteCarlo)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
