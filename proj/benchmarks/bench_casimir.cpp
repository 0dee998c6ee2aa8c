#include <benchmark/benchmark.h>

#include "casimag/anisotropy.hpp"
#include "casimag/casimir.hpp"
#include "casimag/materials.hpp"
#include "casimag/units.hpp"

using namespace casimag;

static void BM_GoldIronEnergy(benchmark::State& state) {
  const auto au = materials::gold();
  const auto fe = materials::iron({units::pi / 3, 0.2});
  const double d = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(casimir_energy_general(au, fe, d));
}
BENCHMARK(BM_GoldIronEnergy)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Decomposition(benchmark::State& state) {
  const auto au = materials::gold();
  const auto fe = materials::iron();
  const double d = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(casimir_decomposed(au, fe, d));
}
BENCHMARK(BM_Decomposition)->Arg(1)->Arg(100)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_InplaneScan(benchmark::State& state) {
  const auto plate = materials::uniaxial_plate("calcite");
  const auto fe = materials::iron({units::pi / 2, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(scan_inplane(plate, fe, 100.0, 16));
}
BENCHMARK(BM_InplaneScan)->Unit(benchmark::kMillisecond);

static void BM_GoldEpsilon(benchmark::State& state) {
  const auto& eps = materials::gold_epsilon();
  double w = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eps(w));
    w = w > 1e3 ? 1e-3 : w * 1.37;
  }
}
BENCHMARK(BM_GoldEpsilon);

static void BM_KramersKronigDirect(benchmark::State& state) {
  const auto table = OpticalDataTable::read_csv(
      (materials::data_directory() / "au_eps_xx.csv").string(), TableKind::diagonal);
  for (auto _ : state) benchmark::DoNotOptimize(kk_diagonal(table, 1.0));
}
BENCHMARK(BM_KramersKronigDirect);
BENCHMARK_MAIN();
