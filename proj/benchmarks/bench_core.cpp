#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gmcat/adjoint.hpp"

namespace {

using namespace gmcat;

void BM_BarrattEcclesTables(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(barratt_eccles(n));
}
BENCHMARK(BM_BarrattEcclesTables)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ValidateOperad(benchmark::State& state) {
  const auto op = barratt_eccles(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_operad(op).ok());
}
BENCHMARK(BM_ValidateOperad)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_MonadMultiply(benchmark::State& state) {
  const Monad mo(barratt_eccles(4));
  const auto inner = mo.make(Degree::object, 2, 0, std::vector<ObjId>{ObjId{0}, ObjId{0}});
  const auto outer = mo.make(Degree::object, 2, 0, std::vector<DElem<ObjId>>{inner, inner});
  for (auto _ : state) benchmark::DoNotOptimize(mo.mu(outer));
}
BENCHMARK(BM_MonadMultiply);

void BM_CheckCartesian(benchmark::State& state) {
  const Monad mo(barratt_eccles(3));
  CartesianOptions options;
  options.squares = 20;
  options.max_set = 4;
  options.bound = 3;
  for (auto _ : state) benchmark::DoNotOptimize(check_cartesian(mo, Degree::object, options).ok());
}
BENCHMARK(BM_CheckCartesian)->Unit(benchmark::kMillisecond);

void BM_FreeHomSymmetric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = from_symmetric(terminal_multicat(4, true), Monad(barratt_eccles(4)));
  const auto power = m.monad().make(Degree::object, n, 0, std::vector<ObjId>(n, ObjId{0}));
  for (auto _ : state) {
    const auto l = L(m);
    benchmark::DoNotOptimize(l.hom(power, power).size());
  }
}
BENCHMARK(BM_FreeHomSymmetric)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_UnitCheck(benchmark::State& state) {
  const auto m = from_symmetric(terminal_multicat(3, true), Monad(barratt_eccles(3)));
  for (auto _ : state) benchmark::DoNotOptimize(check_unit(L(m), m, 3).ok());
}
BENCHMARK(BM_UnitCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
