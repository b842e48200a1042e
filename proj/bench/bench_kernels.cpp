// Serial reference vs OpenMP kernels on the hot scans.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "sepcomp/kernels.hpp"
#include "sepcomp/projection.hpp"
#include "sepcomp/rng.hpp"

using namespace sepcomp;

namespace {

std::vector<Vector> random_points(std::size_t count, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vector> pts(count, Vector(n));
    for (auto& p : pts)
        for (auto& v : p) v = rng.normal();
    return pts;
}

struct PairFixture {
    std::vector<Vector> original;
    std::vector<Vector> projected;

    explicit PairFixture(std::size_t count) {
        const std::size_t n = 64, m = 16;
        original = random_points(count, n, 1);
        const auto q = generate_projection(m, n, Ensemble::gaussian, 2, true);
        projected = kernels::serial::project(q.entries(), original);
    }
};

template <bool Parallel>
void BM_InnerProductDeviation(benchmark::State& state) {
    PairFixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::max_inner_product_deviation(f.original, f.projected)
                          : kernels::serial::max_inner_product_deviation(f.original, f.projected);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_SquaredDistanceDeviation(benchmark::State& state) {
    PairFixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::max_squared_distance_deviation(f.original, f.projected)
                          : kernels::serial::max_squared_distance_deviation(f.original, f.projected);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_Project(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 256, 3);
    const auto q = generate_projection(64, 256, Ensemble::gaussian, 4, true);
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::project(q.entries(), pts) : kernels::serial::project(q.entries(), pts);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_Argmin(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 32, 5);
    std::vector<std::size_t> subset(pts.size());
    std::iota(subset.begin(), subset.end(), 0);
    const Vector d = random_points(1, 32, 6)[0];
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::argmin_projection(pts, subset, d)
                          : kernels::serial::argmin_projection(pts, subset, d);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_SupportDeviation(benchmark::State& state) {
    const auto q = generate_projection(12, static_cast<std::size_t>(state.range(0)), Ensemble::gaussian, 7, true);
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::max_support_deviation(q.entries(), 3)
                          : kernels::serial::max_support_deviation(q.entries(), 3);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(BM_InnerProductDeviation<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_InnerProductDeviation<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SquaredDistanceDeviation<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SquaredDistanceDeviation<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Project<false>)->Arg(1000);
BENCHMARK(BM_Project<true>)->Arg(1000);
BENCHMARK(BM_Argmin<false>)->Arg(100000);
BENCHMARK(BM_Argmin<true>)->Arg(100000);
BENCHMARK(BM_SupportDeviation<false>)->Arg(24);
BENCHMARK(BM_SupportDeviation<true>)->Arg(24);

BENCHMARK_MAIN();
