#include <benchmark/benchmark.h>

#include "picard_strata/balance.hpp"
#include "picard_strata/degree_class.hpp"
#include "picard_strata/dual_graph.hpp"
#include "picard_strata/oracle.hpp"
#include "picard_strata/strata.hpp"

using namespace picard_strata;

namespace {

DualGraph dollar_sign() {
    // Two genus-0 vertices joined by three edges plus a loop on each side of
    // a genus-1 bridge vertex: a moderately busy genus-5 graph.
    std::vector<Vertex> vs{{"a", 0}, {"b", 0}, {"c", 1}};
    std::vector<std::pair<int, int>> edges{{0, 1}, {0, 1}, {0, 1}, {1, 2}, {0, 2}, {2, 2}};
    return DualGraph::from_indices(std::move(vs), std::move(edges));
}

void BM_classify(benchmark::State& state) {
    DualGraph g = dollar_sign();
    Multidegree md(g, {2, 1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(classify(md));
}
BENCHMARK(BM_classify);

void BM_enumerate_balanced(benchmark::State& state) {
    DualGraph g = dollar_sign();
    const long long d = state.range(0);
    for (auto _ : state) {
        BalancedEnumeration b = enumerate_balanced(g, d);
        benchmark::DoNotOptimize(b.multidegrees.size());
    }
}
BENCHMARK(BM_enumerate_balanced)->Arg(0)->Arg(4)->Arg(8);

void BM_class_group(benchmark::State& state) {
    DualGraph g = dollar_sign();
    for (auto _ : state) benchmark::DoNotOptimize(class_group(g).class_count());
}
BENCHMARK(BM_class_group);

void BM_is_d_general_exhaustive(benchmark::State& state) {
    DualGraph g = dollar_sign();
    for (auto _ : state)
        benchmark::DoNotOptimize(is_d_general(g, 4, DGeneralMethod::Exhaustive));
}
BENCHMARK(BM_is_d_general_exhaustive);

void BM_is_d_general_criterion(benchmark::State& state) {
    DualGraph g = dollar_sign();
    for (auto _ : state)
        benchmark::DoNotOptimize(is_d_general(g, 4, DGeneralMethod::Criterion));
}
BENCHMARK(BM_is_d_general_criterion);

void BM_generate_corpus(benchmark::State& state) {
    for (auto _ : state) {
        auto corpus = generate_corpus({static_cast<int>(state.range(0)), 3, 4,
                                       StabilityFilter::Stable});
        benchmark::DoNotOptimize(corpus.size());
    }
}
BENCHMARK(BM_generate_corpus)->Arg(2)->Arg(3);

void BM_vine_generators(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_special_vine_generators(25, 24).size());
}
BENCHMARK(BM_vine_generators);

} // namespace

BENCHMARK_MAIN();
