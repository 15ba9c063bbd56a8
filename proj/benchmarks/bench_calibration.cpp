#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "rfqc/exp_fit.hpp"
#include "rfqc/flux_pipeline.hpp"
#include "rfqc/gate_phase.hpp"
#include "rfqc/mux_plan.hpp"
#include "rfqc/predistort.hpp"

using namespace rfqc;

namespace {

constexpr double kRate = 6.88e9;

void BM_FitTwoExponentials(benchmark::State& state)
{
    const device::TransferFunction h{{{0.2, 30e-9}, {-0.1, 2e-6}}};
    std::vector<double> t;
    std::vector<double> y;
    for (int k = 0; k < 400; ++k) {
        t.push_back(1e-9 * std::pow(2e4, k / 399.0));
        y.push_back(h.step_response(t.back()));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cal::fit_exponentials(t, y, cal::ExpFitOptions{}));
    }
}
BENCHMARK(BM_FitTwoExponentials);

void BM_Predistort(benchmark::State& state)
{
    const device::TransferFunction h{{{0.12, 12e-9}, {-0.08, 150e-9}, {0.05, 1.5e-6}, {-0.04, 8e-6}}};
    const std::vector<double> step(static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cal::predistort(h, step, kRate));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Predistort)->Arg(4096)->Arg(1 << 18);

void BM_FluxPipeline(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    const auto h = device::random_transfer_function(rng, kRate);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cal::run_flux_pipeline(h, cal::FluxPipelineConfig{}));
    }
}
BENCHMARK(BM_FluxPipeline)->Unit(benchmark::kMillisecond);

void BM_GatePhaseSweep(benchmark::State& state)
{
    const device::GatePhases truth{0.7853981633974483, 0.0, 0.0174533, 0.0349066, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cal::calibrate_gate_phase(truth));
    }
}
BENCHMARK(BM_GatePhaseSweep)->Unit(benchmark::kMillisecond);

void BM_PlanMux(benchmark::State& state)
{
    const std::vector<double> resonators{6805e6, 5791e6, 7697e6, 6966e6};
    cal::PlanSearch s;
    s.lo_min = 3e9;
    s.lo_max = 10e9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cal::plan_mux(resonators, s));
    }
}
BENCHMARK(BM_PlanMux)->Unit(benchmark::kMillisecond);

}  // namespace
