#include <benchmark/benchmark.h>

#include "stringyzeta/mmp.hpp"
#include "stringyzeta/ratexpr.hpp"
#include "stringyzeta/resolution_graph.hpp"
#include "stringyzeta/stringy.hpp"

namespace sz = stringyzeta;

namespace {

sz::ResolutionGraph chain_germ(int n) {
    std::vector<sz::GraphVertex> vs;
    std::vector<sz::GraphEdge> es;
    for (int i = 0; i < n; ++i)
        vs.push_back({"E" + std::to_string(i), i == 0 ? 1 : 0, i == 0 ? -3 : -2});
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return sz::ResolutionGraph::from_indices("chain", std::move(vs), std::move(es), {});
}

sz::ResolutionGraph star_germ() {
    std::vector<sz::GraphVertex> vs = {
        {"E", 0, -2}, {"E1", 0, -3}, {"E2", 0, -3}, {"E3", 0, -3}};
    std::vector<sz::GraphEdge> es = {{0, 1}, {0, 2}, {0, 3}};
    return sz::ResolutionGraph::from_indices("star", std::move(vs), std::move(es), {});
}

void BM_LogDiscrepancies(benchmark::State& state) {
    auto g = chain_germ(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sz::log_discrepancies(g));
}
BENCHMARK(BM_LogDiscrepancies)->Arg(8)->Arg(20);

void BM_RunMmp(benchmark::State& state) {
    auto g = chain_germ(12);
    sz::Rational d(1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(sz::run_mmp(g, d));
}
BENCHMARK(BM_RunMmp);

void BM_ZetaMotivic(benchmark::State& state) {
    auto g = star_germ();
    sz::Rational d(3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(sz::zeta(g, d, sz::Level::motivic));
}
BENCHMARK(BM_ZetaMotivic);

void BM_LimitAtS1(benchmark::State& state) {
    auto g = chain_germ(8);
    auto z = sz::zeta(g, sz::Rational(1), sz::Level::motivic);
    for (auto _ : state) benchmark::DoNotOptimize(sz::limit_at_s1(z.expr()));
}
BENCHMARK(BM_LimitAtS1);

void BM_RatfnEqual(benchmark::State& state) {
    auto g = star_germ();
    auto a = sz::zeta(g, sz::Rational(1, 4), sz::Level::motivic).expr();
    auto b = sz::zeta(g, sz::Rational(1, 4), sz::Level::motivic, sz::ModelChoice::canonical).expr();
    for (auto _ : state) benchmark::DoNotOptimize(sz::ratfn_equal(a, b));
}
BENCHMARK(BM_RatfnEqual);

} // namespace

BENCHMARK_MAIN();
