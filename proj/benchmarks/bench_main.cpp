#include <random>

#include <benchmark/benchmark.h>

#include "audit.hpp"
#include "cechborder/border.hpp"

using namespace cechb;

namespace {

IntMatrix dense(size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    IntMatrix m(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            m(r, c) = d(rng);
    return m;
}

void BM_SmithDense(benchmark::State& state)
{
    const IntMatrix m = dense(static_cast<size_t>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithDense)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_PlaneBoundary(benchmark::State& state)
{
    const SpacePair p = generate_example(Example::plane, static_cast<int>(state.range(0)));
    const SimplicialPair whole(p.space().complex());
    const IntMatrix d = boundary_matrix(whole, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(d));
    state.counters["rows"] = static_cast<double>(d.rows());
    state.counters["cols"] = static_cast<double>(d.cols());
}
BENCHMARK(BM_PlaneBoundary)->Arg(3)->Arg(5)->Arg(7);

void BM_NerveHomology(benchmark::State& state)
{
    const SpacePair p = generate_example(Example::cylinder, static_cast<int>(state.range(0)));
    const SimplicialPair whole(p.space().complex());
    for (auto _ : state)
        benchmark::DoNotOptimize(homology(whole, 1, Coefficients::integers()));
}
BENCHMARK(BM_NerveHomology)->Arg(3)->Arg(5)->Arg(7);

void BM_BorderHomology(benchmark::State& state)
{
    const Example e = static_cast<Example>(state.range(0));
    const SpacePair p = generate_example(e, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(border_homology(p, 1, Coefficients::integers()));
    state.SetLabel(std::string(example_name(e)));
}
BENCHMARK(BM_BorderHomology)
    ->Arg(static_cast<int>(Example::line))
    ->Arg(static_cast<int>(Example::plane))
    ->Arg(static_cast<int>(Example::cylinder))
    ->Unit(benchmark::kMillisecond);

void BM_PairSequence(benchmark::State& state)
{
    const SpacePair p = generate_example(Example::cylinder, 5);
    const auto mask = cli::audit_mask(p.space(), 1, 0);
    for (auto _ : state) {
        BorderEngine e(p.space_ptr(), Coefficients::integers());
        benchmark::DoNotOptimize(pair_sequence(e, mask, 0, 2, Variant::cohomology));
    }
}
BENCHMARK(BM_PairSequence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
