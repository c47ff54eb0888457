#include <benchmark/benchmark.h>

#include "vdx/bandit.hpp"
#include "vdx/gauss.hpp"
#include "vdx/learner.hpp"
#include "vdx/mdp.hpp"
#include "vdx/rng.hpp"
#include "vdx/variance.hpp"

namespace {

void BM_erf(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vdx::erf(x));
        x += 1e-6;
        if (x > 6.0) x = 0.0;
    }
}
BENCHMARK(BM_erf);

void BM_interval_mass(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::gaussian_interval_mass(0.0, 3.0, 3.0, 3.01));
}
BENCHMARK(BM_interval_mass);

void BM_clipped_entropy(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::clipped_gaussian_entropy(0.3, 0.7, {-1.0, 1.0}));
}
BENCHMARK(BM_clipped_entropy);

void BM_optimal_sigma_closed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::optimal_sigma_closed({3.0, 0.01}));
}
BENCHMARK(BM_optimal_sigma_closed);

void BM_optimal_sigma_numeric(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::optimal_sigma_numeric({3.0, 0.01}, 1e-8));
}
BENCHMARK(BM_optimal_sigma_numeric);

void BM_mdp_value(benchmark::State& state) {
    vdx::QProfile tri = vdx::QProfile::triangular(0.2);
    for (auto _ : state) benchmark::DoNotOptimize(vdx::mdp_value(1.1, 1.0, tri));
}
BENCHMARK(BM_mdp_value);

void BM_mdp_optimal_sigma(benchmark::State& state) {
    vdx::QProfile tri = vdx::QProfile::triangular(0.2);
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::mdp_optimal_sigma(1.0, tri, 1e-9));
}
BENCHMARK(BM_mdp_optimal_sigma);

void BM_hdr_interval(benchmark::State& state) {
    vdx::QProfile bump = vdx::QProfile::gaussian_bump(0.2).normalized();
    for (auto _ : state) benchmark::DoNotOptimize(vdx::hdr_interval(bump, 0.9));
}
BENCHMARK(BM_hdr_interval);

void BM_sample_batch(benchmark::State& state) {
    vdx::BanditSchedule schedule = vdx::BanditSchedule::default_two_stage();
    vdx::Rng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(vdx::sample_batch(0.0, 1.0, schedule, 100, 128, rng));
}
BENCHMARK(BM_sample_batch);

void BM_train_step(benchmark::State& state) {
    vdx::BanditSchedule schedule = vdx::BanditSchedule::default_two_stage();
    vdx::LearnerConfig cfg;
    vdx::PolicyState st = vdx::make_policy(vdx::Variant::vd_inverse, 0.0, 1.0,
                                           0.041327313541224929, {}, 0.0, cfg);
    vdx::Rng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            vdx::train_step(vdx::Variant::vd_inverse, st, schedule, 100, 128, rng, cfg));
}
BENCHMARK(BM_train_step);

}  // namespace

BENCHMARK_MAIN();
