#include "sgbeam/assembly.hpp"
#include "sgbeam/dynamics.hpp"
#include "sgbeam/fem_element.hpp"
#include "sgbeam/model.hpp"

#include <benchmark/benchmark.h>

using namespace sgbeam;

static void BM_ElementMatrices(benchmark::State& state) {
  const BeamModel model = build_model(default_inputs());
  const auto order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(element_matrices(0.1, model.nondim.coefficients, order));
  }
}
BENCHMARK(BM_ElementMatrices)->Arg(4)->Arg(8);

static void BM_Assemble(benchmark::State& state) {
  const BeamModel model = build_model(default_inputs());
  const Mesh mesh = Mesh::uniform(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_clamp(assemble(mesh, model.nondim.coefficients)));
  }
}
BENCHMARK(BM_Assemble)->Arg(10)->Arg(64)->Arg(256);

static void BM_Eigenfrequencies(benchmark::State& state) {
  ModelInputs in = default_inputs();
  in.n_elements = static_cast<int>(state.range(0));
  const BeamModel model = build_model(in);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenfrequencies(model.system, 5));
  }
}
BENCHMARK(BM_Eigenfrequencies)->Arg(10)->Arg(64);

static void BM_Simulate(benchmark::State& state) {
  const BeamModel model = build_model(default_inputs());
  const State ic = make_initial_condition({}, model.system);
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(model.system, 0.6, ic, cfg, {std::nullopt, false}));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
