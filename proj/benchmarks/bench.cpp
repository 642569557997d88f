#include <benchmark/benchmark.h>

#include <vector>

#include "kummerlab/descent.hpp"
#include "kummerlab/kummer.hpp"

using namespace kummerlab;

namespace {

void BM_HilbertSymbol(benchmark::State& state) {
    Rational a(3 * 5 * 7 * 11), b(-2 * 13 * 17);
    Place v = Place::finite(7);
    for (auto _ : state) benchmark::DoNotOptimize(hilbert(a, b, v));
}
BENCHMARK(BM_HilbertSymbol);

void BM_Factor(benchmark::State& state) {
    Integer n("982451653097842");
    for (auto _ : state) benchmark::DoNotOptimize(factor(n).factors.size());
}
BENCHMARK(BM_Factor);

// local_image results are memoized, so distinct twists are cycled through
// to keep the benchmarks measuring real solves.
std::vector<Integer> squarefree_twists(int count) {
    std::vector<Integer> out;
    for (long d = 1; static_cast<int>(out.size()) < count; d += 2)
        if (SquareClass(Integer(d)).rep() == d) out.push_back(Integer(d));
    return out;
}

void BM_LocalImageOdd(benchmark::State& state) {
    auto twists = squarefree_twists(4096);
    Place v = Place::finite(7);
    std::size_t i = 0;
    for (auto _ : state) {
        EllipticCurveFull2 E({Integer(0), Integer(3), Integer(10)},
                             twists[i++ % twists.size()]);
        benchmark::DoNotOptimize(local_image(E, v).dim());
    }
}
BENCHMARK(BM_LocalImageOdd);

void BM_LocalImage2(benchmark::State& state) {
    auto twists = squarefree_twists(4096);
    Place v = Place::finite(2);
    std::size_t i = 0;
    for (auto _ : state) {
        EllipticCurveFull2 E({Integer(0), Integer(3), Integer(10)},
                             twists[i++ % twists.size()]);
        benchmark::DoNotOptimize(local_image(E, v).dim());
    }
}
BENCHMARK(BM_LocalImage2);

void BM_SelmerGroup(benchmark::State& state) {
    auto twists = squarefree_twists(512);
    EllipticCurveFull2 E({Integer(0), Integer(3), Integer(10)});
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(selmer_group(E, twists[i++ % twists.size()]).dim());
}
BENCHMARK(BM_SelmerGroup);

void BM_KummerBuild(benchmark::State& state) {
    KummerSpec spec({Integer(0), Integer(7), Integer(11), Integer(13), Integer(17),
                     Integer(19)},
                    {Rational(1), Rational(2), Rational(3), Rational(5), Rational(23),
                     Rational(690)});
    for (auto _ : state) benchmark::DoNotOptimize(build_equations(spec)[0].q[0] == 0);
}
BENCHMARK(BM_KummerBuild);

void BM_KummerLocalSolubility(benchmark::State& state) {
    KummerSpec spec({Integer(0), Integer(1), Integer(2), Integer(3), Integer(4),
                     Integer(5)},
                    std::vector<Rational>(6, Rational(1)));
    auto forms = build_equations(spec);
    Place v = Place::finite(101);
    for (auto _ : state)
        benchmark::DoNotOptimize(local_solubility(forms, v).verdict);
}
BENCHMARK(BM_KummerLocalSolubility);

}  // namespace

BENCHMARK_MAIN();
