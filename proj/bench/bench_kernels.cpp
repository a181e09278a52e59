// Serial reference against the OpenMP kernel for each parallel hot path.
// Run with OMP_NUM_THREADS set to the core count to see the speedup.

#include "goldbach/circle.hpp"
#include "goldbach/expsum.hpp"
#include "goldbach/regions.hpp"
#include "goldbach/sieve.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace gb;

namespace {

const SiftSpec kSift{1, 20000001, 1, 0, 0, 4472};

void BM_sift_count(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(sift_count(kSift));
}
void BM_sift_count_serial(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(sift_count_serial(kSift));
}

void BM_prime_expsum(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(prime_expsum(10000000, 0.123456789));
}
void BM_prime_expsum_serial(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(prime_expsum_serial(10000000, 0.123456789));
}

void BM_enumerate_ps(benchmark::State &st) {
    auto cfg = make_ps_config(1 / 1.05);
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_ps(cfg, 2, 2000000));
}
void BM_enumerate_ps_serial(benchmark::State &st) {
    auto cfg = make_ps_config(1 / 1.05);
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_ps_serial(cfg, 2, 2000000));
}

void BM_fy_level_sets(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(fy_level_sets(7, 1000000, 30));
}
void BM_fy_level_sets_serial(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(fy_level_sets_serial(7, 1000000, 30));
}

void BM_exceptional_set(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(exceptional_set(7, 6));
}
void BM_exceptional_set_serial(benchmark::State &st) {
    for (auto _ : st) benchmark::DoNotOptimize(exceptional_set_serial(7, 6));
}

void BM_integrate(benchmark::State &st) {
    OmegaTable omega = build_omega_table(std::ceil(omega_range_for(1e-4)));
    auto spec = IntegralSpec::make(8, 1e-4, 1000000, 42);
    for (auto _ : st) benchmark::DoNotOptimize(integrate(spec, omega));
}
void BM_integrate_serial(benchmark::State &st) {
    OmegaTable omega = build_omega_table(std::ceil(omega_range_for(1e-4)));
    auto spec = IntegralSpec::make(8, 1e-4, 1000000, 42);
    for (auto _ : st) benchmark::DoNotOptimize(integrate_serial(spec, omega));
}

} // namespace

BENCHMARK(BM_sift_count)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sift_count_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_prime_expsum)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_prime_expsum_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_enumerate_ps)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_enumerate_ps_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fy_level_sets)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fy_level_sets_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_exceptional_set)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_exceptional_set_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_integrate)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_integrate_serial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
