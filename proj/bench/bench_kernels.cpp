// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "qqs/dispersion.hpp"
#include "qqs/kernels.hpp"
#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"

namespace {

using namespace qqs;

ScanConfig scan_config() {
  ScanConfig cfg;
  cfg.plate = PlateSpec{3.401, 45.0, load_material("quartz")};
  cfg.theta_step_deg = 0.01;
  return cfg;
}

std::vector<QuquartState> random_states(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<QuquartState> out;
  for (int k = 0; k < n; ++k) {
    Vector4 v;
    for (std::size_t i = 0; i < 4; ++i) v[i] = Complex{g(rng), g(rng)};
    out.push_back(QuquartState::normalized(v));
  }
  return out;
}

void BM_Scan(benchmark::State& state, Execution exec) {
  const ScanConfig cfg = scan_config();
  for (auto _ : state) benchmark::DoNotOptimize(scan_tilt(cfg, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.angles().size()));
}

void BM_Session(benchmark::State& state, Execution exec) {
  SessionConfig cfg;
  cfg.rounds = state.range(0);
  cfg.noise.depolarization = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(run_session(cfg, exec));
  state.SetItemsProcessed(state.iterations() * cfg.rounds);
}

void BM_Tomography(benchmark::State& state, bool parallel_kernel) {
  const auto states = random_states(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel_kernel ? parallel::roundtrip_fidelities(states, 1e6)
                                             : serial::roundtrip_fidelities(states, 1e6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(BM_Scan, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scan, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Session, serial, Execution::Serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Session, parallel, Execution::Parallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Tomography, serial, false)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Tomography, parallel, true)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
