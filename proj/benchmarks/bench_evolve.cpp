#include <benchmark/benchmark.h>

#include "iongate/gates.hpp"

using namespace iongate;

namespace {

void BM_BuildConditional(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const HilbertSpace space(n_max);
  const GateParams params{0.15, 1.0, 20.0, n_max};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_conditional_phase(space, params));
  }
}
BENCHMARK(BM_BuildConditional)->Arg(3)->Arg(8);

void BM_OperatorApply(benchmark::State& state) {
  const HilbertSpace space(3);
  const GateParams params{0.15, 1.0, 20.0, 3};
  const Operator h = build_conditional_phase(space, params);
  const StateVector psi = named_state(space, NamedState::Q00);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.apply(psi));
  }
}
BENCHMARK(BM_OperatorApply);

void BM_FixedSteps(benchmark::State& state) {
  const HilbertSpace space(3);
  const GateParams params{0.15, 1.0, 20.0, 3};
  const Operator h = build_conditional_phase(space, params);
  const StateVector psi = named_state(space, NamedState::Q00);
  const long steps = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_fixed(h, psi, 10.0, steps));
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_FixedSteps)->Arg(1000)->Arg(10000);

void BM_PhaseGateConditional(benchmark::State& state) {
  const HilbertSpace space(3);
  const GateParams params{0.15, 1.0, 20.0, 3};
  const StateVector psi = named_state(space, NamedState::Q00);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_gate(GateKind::Phase, params, psi, RunMode::Conditional, 1e-6));
  }
}
BENCHMARK(BM_PhaseGateConditional)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
