#include <benchmark/benchmark.h>

#include "qss/qss.hpp"

namespace {

qss::Grid cube(int n, int points, double length) {
  return qss::make_grid(n, std::vector<int>(n, points), std::vector<double>(n, length));
}

// range(0): dimension, range(1): points per axis
void BM_ForwardInverse(benchmark::State& state) {
  const qss::Grid g = cube(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 10.0);
  qss::ComplexArray a = qss::sample_preset(g, qss::GaussianPreset{}).u;
  const qss::Fft fft(g);
  for (auto _ : state) {
    fft.forward(a);
    fft.inverse(a);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_ForwardInverse)->Args({2, 128})->Args({3, 64})->Args({4, 32})->Unit(benchmark::kMillisecond);

void BM_StrangStep(benchmark::State& state) {
  const qss::Grid g = cube(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 20.0);
  qss::FieldPair f = qss::sample_preset(g, qss::GaussianPreset{1.0, 1.0, 1.5});
  qss::SplitStepper stepper(g, qss::PhysicsParams{});
  for (auto _ : state) {
    stepper.strang(f, 1e-3);
    benchmark::DoNotOptimize(f.u.data());
  }
}
BENCHMARK(BM_StrangStep)->Args({2, 128})->Args({3, 64})->Args({4, 32})->Unit(benchmark::kMillisecond);

void BM_NonlinearStep(benchmark::State& state) {
  const qss::Grid g = cube(2, static_cast<int>(state.range(0)), 20.0);
  qss::FieldPair f = qss::sample_preset(g, qss::GaussianPreset{1.0, 1.0, 1.5});
  for (auto _ : state) {
    f = qss::nonlinear_step(f, 1e-3);
    benchmark::DoNotOptimize(f.u.data());
  }
}
BENCHMARK(BM_NonlinearStep)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_Observe(benchmark::State& state) {
  const qss::Grid g = cube(3, 64, 20.0);
  const qss::FieldPair f = qss::sample_preset(g, qss::GaussianPreset{1.0, 1.0, 1.5});
  for (auto _ : state) benchmark::DoNotOptimize(qss::observe(f, g, qss::PhysicsParams{}, 0.0));
}
BENCHMARK(BM_Observe)->Unit(benchmark::kMillisecond);

void BM_PetviashviliSolve(benchmark::State& state) {
  const qss::Grid g = cube(2, static_cast<int>(state.range(0)), 40.0);
  qss::PetviashviliConfig c;
  c.max_iter = 300;
  int iterations = 0;
  for (auto _ : state) {
    const qss::GroundStateResult gs = qss::petviashvili_solve(g, qss::PhysicsParams{}, c);
    iterations = gs.iterations;
    benchmark::DoNotOptimize(gs.fields.u.data());
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_PetviashviliSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_OrbitDistance(benchmark::State& state) {
  const qss::Grid g = cube(2, 128, 40.0);
  const qss::FieldPair gs = qss::sample_preset(g, qss::GaussianPreset{1.0, 0.5, 2.0});
  const qss::FieldPair x = qss::apply_orbit(gs, g, 0.3, {2.4, -1.3});
  const bool fractional = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(qss::orbit_distance(x, gs, g, fractional));
}
BENCHMARK(BM_OrbitDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
