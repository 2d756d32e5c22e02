#include <benchmark/benchmark.h>

#include "gd/garding.hpp"
#include "gd/majorize.hpp"
#include "gd/rng.hpp"
#include "gd/sample.hpp"

using namespace gd;

namespace {

void BM_JacobiEigenvalues(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    Rng rng(1);
    const SymmetricMatrix A = random_symmetric(rng, dim);
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_sym(A));
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

void BM_DetFieldQuaternionic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const SymmetricMatrix A = random_spd(rng, 4 * n, Algebra::Quaternionic);
    for (auto _ : state) benchmark::DoNotOptimize(det_field(A));
}
BENCHMARK(BM_DetFieldQuaternionic)->Arg(1)->Arg(2);

void BM_GardingSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Space sp{Algebra::Real, n};
    const OperatorSpec F = OperatorSpec::sigma(sp, n >= 3 ? 3 : n);
    Rng rng(3);
    const SymmetricMatrix id = SymmetricMatrix::identity(n);
    const SymmetricMatrix B = random_symmetric(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(garding_spectrum(F, id, B));
}
BENCHMARK(BM_GardingSpectrum)->Arg(3)->Arg(6);

void BM_PFoldSpectrum(benchmark::State& state) {
    const Space sp{Algebra::Real, 6};
    const OperatorSpec F = OperatorSpec::p_fold_sum(sp, 3);  // degree 20
    Rng rng(4);
    const SymmetricMatrix id = SymmetricMatrix::identity(6);
    const SymmetricMatrix B = random_symmetric(rng, 6);
    for (auto _ : state) benchmark::DoNotOptimize(garding_spectrum(F, id, B));
}
BENCHMARK(BM_PFoldSpectrum);

void BM_GradientMatrix(benchmark::State& state) {
    const Space sp{Algebra::Real, static_cast<int>(state.range(0))};
    const OperatorSpec F = OperatorSpec::sigma(sp, 2);
    Rng rng(5);
    const SymmetricMatrix A = random_spd(rng, sp.n, Algebra::Real);
    for (auto _ : state) benchmark::DoNotOptimize(gradient_matrix(F, A));
}
BENCHMARK(BM_GradientMatrix)->Arg(3)->Arg(6);

void BM_MajorizationSample(benchmark::State& state) {
    const Space sp{Algebra::Complex, 3};
    const OperatorSpec F = OperatorSpec::sigma(sp, 2);
    std::uint64_t i = 0;
    for (auto _ : state) {
        Rng rng = Rng::for_sample(7, i++);
        const SymmetricMatrix A = random_positive_domain(rng, F);
        benchmark::DoNotOptimize(std::pow(F(A), 0.5) - std::pow(det_field(A), 1.0 / 3.0));
    }
}
BENCHMARK(BM_MajorizationSample);

void BM_LagrangianEvaluate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const OperatorSpec F = OperatorSpec::lagrangian_ma(n);
    Rng rng(8);
    const SymmetricMatrix A = random_lagrangian_positive(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(F(A));
}
BENCHMARK(BM_LagrangianEvaluate)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
