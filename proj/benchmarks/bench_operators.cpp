#include <benchmark/benchmark.h>

#include "crspin/cohomology.hpp"
#include "crspin/operators.hpp"
#include "crspin/weitzenboeck.hpp"

using namespace crspin;

namespace {

models::PseudoHermitianModel landau(int levels) {
  return models::cr_alpha_bundle({2, {0.0, 1.0}}, 1, 1, {1, levels});
}

void BM_SectionSpace(benchmark::State& state) {
  const auto model = landau(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ops::SectionSpace(model).dim());
}
BENCHMARK(BM_SectionSpace)->Arg(4)->Arg(8)->Arg(12);

void BM_AssembleKohnDirac(benchmark::State& state) {
  const ops::SectionSpace sp(landau(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ops::assemble_kohn_dirac(sp).matrix.data());
  state.counters["dim"] = static_cast<double>(sp.dim());
}
BENCHMARK(BM_AssembleKohnDirac)->Arg(4)->Arg(8)->Arg(12);

void BM_FlatAssembly(benchmark::State& state) {
  const ops::SectionSpace sp(models::heisenberg_model(2, 0, {static_cast<int>(state.range(0)), 4}));
  for (auto _ : state) benchmark::DoNotOptimize(ops::assemble_kohn_dirac(sp).matrix.data());
  state.counters["dim"] = static_cast<double>(sp.dim());
}
BENCHMARK(BM_FlatAssembly)->Arg(1)->Arg(2);

void BM_Spectrum(benchmark::State& state) {
  const ops::SectionSpace sp(landau(static_cast<int>(state.range(0))));
  const Mat d = ops::assemble_kohn_dirac(sp).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(ops::spectrum(d).size());
  state.counters["dim"] = static_cast<double>(sp.dim());
}
BENCHMARK(BM_Spectrum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_KohnTable(benchmark::State& state) {
  const ops::SectionSpace sp(landau(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology::kohn_table(sp).entries.size());
}
BENCHMARK(BM_KohnTable)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SlResidual(benchmark::State& state) {
  const ops::SectionSpace sp(landau(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(weitzenboeck::sl_residual(sp));
}
BENCHMARK(BM_SlResidual)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
