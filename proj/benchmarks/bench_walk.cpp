#include <benchmark/benchmark.h>

#include "plasticwalk/hamiltonians.hpp"
#include "plasticwalk/harness.hpp"
#include "plasticwalk/qca.hpp"
#include "plasticwalk/walk.hpp"

using namespace plasticwalk;

static void BM_QwStepStationary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto params = ScalingParams::make(0.2, CProfile::sine_bump(0.5, 0.3, static_cast<double>(n)), 0.05, 1.0);
  SpinorField psi = make_wavepacket(n, 1.0, 0.5 * static_cast<double>(n), 8.0, 0.4);
  const StepOperator op(params, n, 0.0);
  for (auto _ : state) {
    op.apply(psi);
    benchmark::DoNotOptimize(psi.sites().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QwStepStationary)->RangeMultiplier(4)->Range(64, 16384);

// Rebuilds every per-site operator, as a time-dependent profile would.
static void BM_QwStepRebuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto params = ScalingParams::make(0.2, CProfile::sine_bump(0.5, 0.3, static_cast<double>(n)), 0.05, 1.0);
  SpinorField psi = make_wavepacket(n, 1.0, 0.5 * static_cast<double>(n), 8.0, 0.4);
  for (auto _ : state) {
    psi = qw_step(psi, params, 0.0);
    benchmark::DoNotOptimize(psi.sites().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QwStepRebuild)->RangeMultiplier(4)->Range(64, 16384);

static void BM_QcaStep(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  QcaState s = QcaState::basis(cells, 0b101);
  for (auto _ : state) {
    s = qca_step(s, Angles{0.9, 0.3});
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_QcaStep)->DenseRange(4, 10, 2);

static void BM_CrankNicolsonStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double dx = 64.0 / static_cast<double>(n);
  const auto h = lattice_hamiltonian_curved(n, dx, 0.1, CProfile::sine_bump(0.5, 0.3, 64.0));
  const CrankNicolson cn(h, dx / 4.0);
  SpinorField psi = make_wavepacket(n, dx, 32.0, 8.0, 0.4);
  for (auto _ : state) {
    cn.step(psi);
    benchmark::DoNotOptimize(psi.sites().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrankNicolsonStep)->RangeMultiplier(4)->Range(256, 65536);

BENCHMARK_MAIN();
