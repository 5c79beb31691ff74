// Strip-operator matvec: OpenMP kernel against the serial reference.
//   wavecascade_bench --benchmark_filter=Apply

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wavecascade/dnop.hpp"
#include "wavecascade/parallel.hpp"
#include "wavecascade/strip.hpp"

using namespace wavecascade;

namespace {

StripGeometry bench_geometry(int n) {
    const double l = 2.0 * std::numbers::pi;
    const PeriodicGrid g(n, n, l, l);
    const auto zeta = ScalarField::from_function(g, [](double x, double y) { return 0.3 * std::cos(x) * std::sin(y); });
    const auto b = ScalarField::from_function(g, [](double x, double y) { return 0.2 * std::cos(x + 2 * y); });
    return StripGeometry(zeta, b, RegimeParams(1.0, 1.0, 1.0, 1.0));
}

std::vector<double> random_vector(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& e : v) e = u(rng);
    return v;
}

void BM_ApplyParallel(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(1));
    set_kernel_threads(threads);
    const StripOperator op(bench_geometry(static_cast<int>(state.range(0))), 24);
    const auto x = random_vector(op.size());
    std::vector<double> y(op.size());
    for (auto _ : state) {
        op.apply(x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(op.size()));
    set_kernel_threads(0);
}

void BM_ApplyReference(benchmark::State& state) {
    const StripOperator op(bench_geometry(static_cast<int>(state.range(0))), 24);
    const auto x = random_vector(op.size());
    std::vector<double> y(op.size());
    for (auto _ : state) {
        op.apply_reference(x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(op.size()));
}

void BM_DnElliptic(benchmark::State& state) {
    set_kernel_threads(static_cast<int>(state.range(1)));
    const StripGeometry geom = bench_geometry(static_cast<int>(state.range(0)));
    const auto psi = ScalarField::from_function(geom.grid(), [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
    for (auto _ : state) benchmark::DoNotOptimize(dn_apply(geom, psi, DnBackend::elliptic(24, 1e-10)));
    set_kernel_threads(0);
}

}  // namespace

BENCHMARK(BM_ApplyReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyParallel)->Args({32, 1})->Args({32, 4})->Args({64, 1})->Args({64, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DnElliptic)->Args({32, 1})->Args({32, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
