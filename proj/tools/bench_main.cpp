// Benchmark comparing the OpenMP kernels against their serial reference:
// consistent-pair extraction + singleton search on a large noiseless
// instance, per-bin denoising + alignment on a robust instance, and the
// design-parameter grid search.

#include <chrono>
#include <cstdio>

#include "mixcolor/decode.hpp"
#include "mixcolor/devo.hpp"
#include "mixcolor/experiments.hpp"
#include "mixcolor/robust.hpp"
#include "mixcolor/simulate.hpp"

using namespace mixcolor;

namespace {

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s serial %9.2f ms   omp %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    {
        const int K = 20000, L = 2, n = 100000;
        const int M = bins_from_ratio(3.71, K);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, 0.0, 7);
        auto plan = make_noiseless_plan(n, M, 15, 3, 3, 8);
        auto ms = sample_measurements(plan, model, 9);
        DecodeOptions serial_opt, omp_opt;
        serial_opt.parallel = false;
        omp_opt.parallel = true;
        double ts = time_ms([&] { decode(plan, ms, L, serial_opt); });
        double tp = time_ms([&] { decode(plan, ms, L, omp_opt); });
        report("noiseless decode (K=20000)", ts, tp);
    }
    {
        const int n = 4096, K = 50, M = 150;
        QuantizedAlphabet alpha{1.0, 5};
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, ValueSource::Quantized, alpha,
                                      0.2, 11);
        auto plan = make_robust_plan(n, M, 15, 36, default_p2(n), alpha, 0.2, 12);
        auto ms = sample_measurements(plan, model, 13);
        RobustDecodeOptions serial_opt, omp_opt;
        serial_opt.parallel = false;
        omp_opt.parallel = true;
        double ts = time_ms([&] { robust_decode(plan, ms, serial_opt); });
        double tp = time_ms([&] { robust_decode(plan, ms, omp_opt); });
        report("robust decode (n=4096, K=50)", ts, tp);
    }
    {
        SearchRanges ranges;
        ranges.d_min = 13;
        ranges.d_max = 16;
        double ts = time_ms([&] { optimize_params(2, {0.5, 0.5}, 1e-5, 2.0, ranges, false); });
        double tp = time_ms([&] { optimize_params(2, {0.5, 0.5}, 1e-5, 2.0, ranges, true); });
        report("design grid search (d 13..16)", ts, tp);
    }
    return 0;
}
