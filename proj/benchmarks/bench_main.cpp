#include <benchmark/benchmark.h>

#include <random>

#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/pgd.hpp"
#include "hankel_scs/shgd.hpp"

namespace {

using namespace hscs;

CMatrix randn(Index rows, Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    CMatrix X(rows, cols);
    for (Index i = 0; i < X.size(); ++i) X.data()[i] = cplx(N(rng), N(rng));
    return X;
}

void BM_HankelTimes(benchmark::State& st)
{
    const Index n = st.range(0), r = st.range(1);
    const HankelDims dims = HankelDims::square(n);
    const ComplexSignal u = randn(n, 1, 1);
    const CMatrix X = randn(dims.cols, r, 2);
    for (auto _ : st) benchmark::DoNotOptimize(hankel_times(u, dims, X));
    st.SetItemsProcessed(st.iterations() * r);
}
BENCHMARK(BM_HankelTimes)->Args({127, 4})->Args({2047, 30})->Args({2047, 150});

void BM_GstarGram(benchmark::State& st)
{
    const Index ns = (st.range(0) + 1) / 2, r = st.range(1);
    const Factor Z = randn(ns, r, 3);
    for (auto _ : st) benchmark::DoNotOptimize(gstar_gram(Z));
}
BENCHMARK(BM_GstarGram)->Args({127, 4})->Args({2047, 150});

// One gradient evaluation of each loss at the same problem size.
void BM_GradShgd(benchmark::State& st)
{
    const Index n = st.range(0), r = st.range(1);
    Rng rng(4);
    const SamplingMask mask = uniform_mask(n, n / 2, false, rng);
    const ComplexSignal y = randn(n, 1, 5);
    const Factor Z = randn((n + 1) / 2, r, 6);
    for (auto _ : st) benchmark::DoNotOptimize(grad(Z, y, mask, mask.ratio()));
}
BENCHMARK(BM_GradShgd)->Args({127, 4})->Args({2047, 150})->Unit(benchmark::kMillisecond);

void BM_GradPgd(benchmark::State& st)
{
    const Index n = st.range(0), r = st.range(1);
    Rng rng(4);
    const SamplingMask mask = uniform_mask(n, n / 2, false, rng);
    const ComplexSignal y = randn(n, 1, 5);
    const HankelDims dims = HankelDims::balanced(n);
    const FactorPair pr{randn(dims.rows, r, 6), randn(dims.cols, r, 7)};
    for (auto _ : st) benchmark::DoNotOptimize(pgd_grad(pr, y, mask, mask.ratio()));
}
BENCHMARK(BM_GradPgd)->Args({127, 4})->Args({2047, 150})->Unit(benchmark::kMillisecond);

void BM_TruncSvd(benchmark::State& st)
{
    const Index n = st.range(0), r = st.range(1);
    const ComplexSignal u = randn(n, 1, 8);
    SvdOptions opts = spectral_init_svd_options();
    const LinearOperator op = LinearOperator::hankel(u, HankelDims::square(n));
    for (auto _ : st) benchmark::DoNotOptimize(trunc_svd(op, r, 9, opts));
}
BENCHMARK(BM_TruncSvd)->Args({127, 4})->Args({1023, 30})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
