#include <benchmark/benchmark.h>

#include "bsq/lp.hpp"
#include "bsq/operators.hpp"
#include "bsq/solver.hpp"
#include "bsq/transform.hpp"

namespace {

bsq::SimState make_state(int n) {
  return bsq::initial_condition("random_band", 1.0, 99, bsq::Grid::make(n));
}

void BM_FFTRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bsq::SimState s = make_state(n);
  for (auto _ : state) {
    bsq::PhysicalField phys = bsq::inverse_transform(s.u);
    bsq::SpectralField back = bsq::forward_transform(phys, s.u.grid, 3);
    benchmark::DoNotOptimize(back.coeffs.data());
  }
}
BENCHMARK(BM_FFTRoundTrip)->Arg(32)->Arg(64);

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bsq::SimState s = make_state(n);
  for (auto _ : state) {
    bsq::StepResult r = bsq::step(s, 1e-3);
    benchmark::DoNotOptimize(r.state.u.coeffs.data());
  }
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64);

void BM_BesovGrad(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bsq::SimState s = make_state(n);
  bsq::LPBank bank = bsq::build_bank(s.u.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsq::grad_besov_minus1(s.u, bank));
  }
}
BENCHMARK(BM_BesovGrad)->Arg(32)->Arg(64);

void BM_Bmo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bsq::SimState s = make_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsq::bmo_oscillation_norm(s.u));
  }
}
BENCHMARK(BM_Bmo)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
