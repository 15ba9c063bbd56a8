#include <benchmark/benchmark.h>

#include "rfqc/pulse_coherence.hpp"
#include "rfqc/pulse_execute.hpp"
#include "rfqc/pulse_parser.hpp"

using namespace rfqc;

namespace {

const std::string kProgram = std::string(RFQC_SOURCE_DIR) + "/programs/three_channel.qpl";

void BM_ParseFile(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(pulse::parse_file(kProgram));
    }
}
BENCHMARK(BM_ParseFile);

void BM_StaticCoherence(benchmark::State& state)
{
    const auto p = *pulse::parse_file(kProgram).program;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pulse::check_phase_coherence(p, p.constraints[0], pulse::PhaseModel::dds, state.range(0)));
    }
}
BENCHMARK(BM_StaticCoherence)->Arg(100)->Arg(10000);

void BM_SimulatedCoherence(benchmark::State& state)
{
    const auto p = *pulse::parse_file(kProgram).program;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pulse::simulate_coherence(p, p.constraints[0], pulse::PhaseModel::dds, state.range(0)));
    }
}
BENCHMARK(BM_SimulatedCoherence)->Arg(100)->Arg(1000);

void BM_Execute(benchmark::State& state)
{
    const auto p = *pulse::parse_file(std::string(RFQC_SOURCE_DIR) + "/programs/four_qubit_readout.qpl").program;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pulse::execute(p));
    }
}
BENCHMARK(BM_Execute)->Unit(benchmark::kMillisecond);

}  // namespace
