#include <benchmark/benchmark.h>

#include "rfqc/envelope.hpp"
#include "rfqc/fixed_point.hpp"
#include "rfqc/synth.hpp"

using namespace rfqc;

namespace {

const SampleClock kDac(6881.28e6);

void BM_SynthesizeGaussian(benchmark::State& state)
{
    const auto env = dsp::make_gaussian(static_cast<std::size_t>(state.range(0)), state.range(0) / 6.0, 0.9);
    const dsp::DdsChannel ch{1020.3e6, 0.4, 0.8, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsp::synthesize_pulse(ch, env, 12345, kDac));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SynthesizeGaussian)->Arg(96)->Arg(4096)->Arg(65536);

void BM_InterpolatedEnvelope(benchmark::State& state)
{
    const auto env = dsp::make_gaussian(static_cast<std::size_t>(state.range(0)), state.range(0) / 6.0, 0.9, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsp::interpolate_envelope(env));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}
BENCHMARK(BM_InterpolatedEnvelope)->Arg(64)->Arg(1024);

void BM_MuxFourTones(benchmark::State& state)
{
    const std::vector<dsp::DdsChannel> tones{
        {880e6, 0.1, 0.2, 0}, {134e6, 0.2, 0.2, 0}, {1772e6, 0.3, 0.2, 0}, {1041e6, 0.4, 0.2, 0}};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsp::synthesize_mux(tones, n, kDac));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MuxFourTones)->Arg(4096)->Arg(65536);

void BM_Quantize(benchmark::State& state)
{
    const auto w = dsp::synthesize_mux(std::vector<dsp::DdsChannel>{{500e6, 0.0, 0.9, 0}}, 65536, kDac);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsp::quantize(w));
    }
    state.SetItemsProcessed(state.iterations() * 65536);
}
BENCHMARK(BM_Quantize);

}  // namespace
