#include <benchmark/benchmark.h>

#include "knotspread/constructions.hpp"
#include "knotspread/knot_guard.hpp"
#include "knotspread/spread.hpp"
#include "knotspread/thickness.hpp"

using namespace knotspread;

namespace {

void BM_SpreadQuadrature(benchmark::State& state) {
    const PolygonalCurve c = regular_ngon(static_cast<int>(state.range(0)), 1.0);
    const Exponent e = Exponent::finite(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spread(c, e).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpreadQuadrature)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_SpreadLog(benchmark::State& state) {
    const PolygonalCurve c = regular_ngon(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spread(c, Exponent::log()).value);
}
BENCHMARK(BM_SpreadLog)->Arg(256);

void BM_SpreadExactP2(benchmark::State& state) {
    const PolygonalCurve c = regular_ngon(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spread(c, Exponent::finite(2.0)).value);
}
BENCHMARK(BM_SpreadExactP2)->Arg(256)->Arg(1024);

void BM_EvaluatorMove(benchmark::State& state) {
    const PolygonalCurve c = regular_ngon(static_cast<int>(state.range(0)), 1.0);
    SpreadEvaluator ev(c, Exponent::finite(3.0));
    std::vector<Vertex3> v(c.vertices().begin(), c.vertices().end());
    v[0] = v[0] * 1.001;
    const PolygonalCurve moved(v);
    for (auto _ : state) benchmark::DoNotOptimize(ev.propose(0, moved).value);
}
BENCHMARK(BM_EvaluatorMove)->Arg(128)->Arg(512);

void BM_Thickness(benchmark::State& state) {
    const PolygonalCurve c = regular_ngon(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(thickness(c).thickness);
}
BENCHMARK(BM_Thickness)->Arg(64)->Arg(256)->Arg(1024);

void BM_KnotDeterminant(benchmark::State& state) {
    const PolygonalCurve k = insert_local_knot(regular_ngon(256, 1.0), builtin_pattern("figure_eight"), 0, 0.03);
    for (auto _ : state) benchmark::DoNotOptimize(knot_determinant(k).determinant);
}
BENCHMARK(BM_KnotDeterminant);

}  // namespace
BENCHMARK_MAIN();
