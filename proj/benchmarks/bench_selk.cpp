#include <benchmark/benchmark.h>

#include "selk/arith/arith.hpp"
#include "selk/kernel/check.hpp"
#include "selk/loop/eval.hpp"
#include "selk/prf/prfcheck.hpp"
#include "selk/selector/selector.hpp"

using namespace selk;

namespace {

// n with the given bit-length and alternating bits.
Natural sample_n(std::int64_t bits) {
  Natural n;
  for (std::int64_t i = 0; i < bits; ++i) n.push_low(i == 0 || i % 2 == 1);
  return n;
}

void BM_MetaReplay(benchmark::State& state) {
  const auto& t = arith::t0();
  const Natural in[] = {arith::theory_code(t), sample_n(state.range(0)), arith::contradiction_code()};
  const loop::Program& prf = *prf::registered_checker(t);
  for (auto _ : state) benchmark::DoNotOptimize(loop::run(prf, in));
}
BENCHMARK(BM_MetaReplay)->RangeMultiplier(8)->Range(1, 4096);

void BM_SelectConInstance(benchmark::State& state) {
  const auto& t = arith::t0();
  const Natural n = sample_n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(selector::select_con_instance(t, n));
  state.SetLabel(std::to_string(n.bit_length()) + " bits");
}
BENCHMARK(BM_SelectConInstance)->RangeMultiplier(8)->Range(1, 4096)->Unit(benchmark::kMillisecond);

void BM_KernelCheckSelectorOutput(benchmark::State& state) {
  const auto& t = arith::t0();
  const auto d = selector::select_con_instance(t, sample_n(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel::check(t, d));
}
BENCHMARK(BM_KernelCheckSelectorOutput)->RangeMultiplier(8)->Range(1, 4096)->Unit(benchmark::kMillisecond);

void BM_PrfOnSelectorOutput(benchmark::State& state) {
  const auto& t = arith::t0();
  const auto item = prf::item_of(selector::select_con_instance(t, sample_n(state.range(0))), "bench");
  std::uint64_t steps = 0;
  for (auto _ : state) steps = prf::run_prf(t, item.p, item.x).steps;
  state.counters["prf_steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_PrfOnSelectorOutput)->Arg(1)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RefuteProvStar(benchmark::State& state) {
  const auto& t = arith::t0();
  for (auto _ : state) benchmark::DoNotOptimize(selector::refute_prov_star(t));
}
BENCHMARK(BM_RefuteProvStar)->Unit(benchmark::kMillisecond);

void BM_ReduceBounded(benchmark::State& state) {
  const auto tp = selector::with_con_bd(arith::t0(), Natural(std::uint64_t{1} << 16));
  const Natural n(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(selector::reduce_bounded(tp, n));
}
BENCHMARK(BM_ReduceBounded)->Arg(7)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_InternalizeRefl(benchmark::State& state) {
  const auto& t = arith::t0();
  const kernel::Derivation refl{{kernel::Line{kernel::eq(kernel::zero(), kernel::zero()), kernel::just::e1()}}};
  for (auto _ : state) benchmark::DoNotOptimize(selector::internalize_d1(t, refl));
}
BENCHMARK(BM_InternalizeRefl)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
