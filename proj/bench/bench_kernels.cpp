// Serial reference against the OpenMP path for the data-parallel kernels.
// Run with --benchmark_filter=<kernel> to compare one pair.

#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>
#include <fmt/core.h>

#include "ccbuckle/elastica.hpp"
#include "ccbuckle/exec.hpp"
#include "ccbuckle/onedof.hpp"
#include "ccbuckle/profiledesign.hpp"
#include "ccbuckle/rodlinear.hpp"

using namespace ccb;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : fmt::format("parallel x{}", max_threads()));
}

void BM_RodTable(benchmark::State& state) {
    std::vector<double> chi;
    for (int i = 0; i <= 40; ++i) {
        chi.push_back(-5.0 + 10.0 * i / 40.0);
    }
    const rod::RodModel model{1.0, 1.0, 1.0, false, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rod::critical_table(model, chi, 6 * std::numbers::pi, 1000, policy(state)));
    }
    label(state);
}

void BM_ElasticaColdSolve(benchmark::State& state) {
    const elastica::ElasticaProblem p{1.0, 1.0, 0.0, 0.6, elastica::Half::left};
    for (auto _ : state) {
        benchmark::DoNotOptimize(elastica::solve_R(0.8, p, rod::LoadSign::tension, std::nullopt, nullptr,
                                                   policy(state)));
    }
    label(state);
}

void BM_ElasticaBranches(benchmark::State& state) {
    const auto s = elastica::default_schedule(3.0);
    const std::vector<elastica::TraceRequest> req{
        {{1.0, 1.0, 0.0, 0.6, elastica::Half::left}, s, rod::LoadSign::tension},
        {{1.0, 1.0, 0.0, 0.6, elastica::Half::right}, s, rod::LoadSign::compression}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(elastica::trace_branches(req, policy(state)));
    }
    label(state);
}

void BM_ClosedLoop(benchmark::State& state) {
    const auto law = design::sinusoidal_law(-1.0, 0.3, 1.2);
    const auto profile = design::design_profile(law);
    const auto phi = onedof::linspace(0.05, 1.2, 400);
    for (auto _ : state) {
        benchmark::DoNotOptimize(design::closed_loop_validate(profile, law, phi, policy(state)));
    }
    label(state);
}

void BM_OneDofTrace(benchmark::State& state) {
    const onedof::OneDofSystem sys{1.0, 1.0, 0.01, onedof::profile_s_shaped(4.0)};
    const auto grid = onedof::linspace(-0.25, 0.25, 20000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(onedof::trace_branch(sys, grid, "b", policy(state)));
    }
    label(state);
}

}  // namespace

BENCHMARK(BM_RodTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ElasticaColdSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ElasticaBranches)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedLoop)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneDofTrace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
