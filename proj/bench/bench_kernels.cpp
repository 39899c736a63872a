#include "rootcalc/fgl.hpp"
#include "rootcalc/kernels.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace rootcalc;

namespace {

// coefficients of the p-series and of log: dense, growing polynomial coefficients
struct Inputs {
    TruncatedSeries a, b;
    explicit Inputs(int D) {
        auto F = build_fgl(PrimeContext::make(3), Basis::Hazewinkel, D);
        a = p_series(F);
        b = F.exp;
    }
};

const Inputs& inputs(int D) {
    static std::map<int, Inputs> cache;
    auto it = cache.find(D);
    if (it == cache.end())
        it = cache.emplace(D, Inputs(D)).first;
    return it->second;
}

void BM_convolve_serial(benchmark::State& st) {
    const auto& in = inputs(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::convolve_serial(in.a.data(), in.a.low_order(), in.b.data(),
                                                          in.b.low_order(), in.a.precision()));
}

void BM_convolve_parallel(benchmark::State& st) {
    const auto& in = inputs(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::convolve_parallel(in.a.data(), in.a.low_order(), in.b.data(),
                                                            in.b.low_order(), in.a.precision()));
}

void BM_poly_mul(benchmark::State& st) {
    const auto& in = inputs(static_cast<int>(st.range(0)));
    GradedPoly x = in.a.coeff(in.a.precision() - 1), y = in.b.coeff(in.b.precision() - 1);
    bool par = st.range(1) != 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(par ? kernels::poly_mul_parallel(x, y) : x * y);
}

}  // namespace

BENCHMARK(BM_convolve_serial)->Arg(12)->Arg(20)->Arg(30);
BENCHMARK(BM_convolve_parallel)->Arg(12)->Arg(20)->Arg(30);
BENCHMARK(BM_poly_mul)->Args({30, 0})->Args({30, 1});

BENCHMARK_MAIN();
