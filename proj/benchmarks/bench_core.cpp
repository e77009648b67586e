#include <benchmark/benchmark.h>

#include <random>

#include "cubext/automorphisms.hpp"
#include "cubext/enumerator.hpp"
#include "cubext/exact_compare.hpp"
#include "cubext/reduction.hpp"
#include "cubext/ring_tests.hpp"

namespace {

using namespace cubext;

CubicForm random_form(std::mt19937_64& g, const Order& o) {
  std::uniform_int_distribution<std::int64_t> u(-9, 9);
  for (;;) {
    CubicForm f{{u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}};
    if (!f.a.is_zero() && !disc_cubic(o, f).is_zero()) return f;
  }
}

void BM_Enumerate(benchmark::State& state) {
  const std::int64_t X = state.range(0);
  std::uint64_t iters = 0;
  for (auto _ : state) {
    CountingSink sink;
    iters = enumerate(field_for(-4), X, sink).candidates_iterated;
    benchmark::DoNotOptimize(sink.count());
  }
  state.counters["candidates"] = static_cast<double>(iters);
}
BENCHMARK(BM_Enumerate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CovariantDouble(benchmark::State& state) {
  const Order o(field_for(-4));
  std::mt19937_64 g(1);
  std::vector<CubicForm> fs;
  for (int i = 0; i < 256; ++i) fs.push_back(random_form(g, o));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(julia_covariant<double>(o, fs[i++ & 255], 53));
}
BENCHMARK(BM_CovariantDouble);

void BM_CovariantMpfr(benchmark::State& state) {
  const Order o(field_for(-4));
  std::mt19937_64 g(2);
  std::vector<CubicForm> fs;
  for (int i = 0; i < 256; ++i) fs.push_back(random_form(g, o));
  const unsigned prec = static_cast<unsigned>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(julia_covariant<Mpfr>(o, fs[i++ & 255], prec));
}
BENCHMARK(BM_CovariantMpfr)->Arg(128)->Arg(512);

void BM_ExactBoundaryDecision(benchmark::State& state) {
  const Order o(field_for(-4));
  for (auto _ : state) {
    FormDecider dec(o, {1, 0, 0, 1});
    benchmark::DoNotOptimize(dec.sign({{1, 0, 0, -1}}));
  }
}
BENCHMARK(BM_ExactBoundaryDecision)->Unit(benchmark::kMicrosecond);

void BM_IsMaximal(benchmark::State& state) {
  const Order o(field_for(-4));
  std::mt19937_64 g(3);
  std::vector<CubicForm> fs;
  for (int i = 0; i < 256; ++i) fs.push_back(random_form(g, o));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_maximal(o, fs[i++ & 255]));
}
BENCHMARK(BM_IsMaximal);

void BM_Automorphs(benchmark::State& state) {
  const FieldParams& p = field_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_automorphs(p, AutRegion::ReducedClosure));
}
BENCHMARK(BM_Automorphs)->Arg(-4)->Arg(-163)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
