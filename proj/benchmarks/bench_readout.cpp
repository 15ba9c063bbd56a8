#include <benchmark/benchmark.h>

#include <cmath>

#include "rfqc/readout.hpp"

using namespace rfqc;

namespace {

constexpr double kAdc = 2457.6e6;

std::vector<Complex> tone(std::size_t n)
{
    std::vector<Complex> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = 0.3 * std::polar(1.0, kTwoPi * 460e6 * static_cast<double>(k) / kAdc);
    }
    return x;
}

void BM_Channelize(benchmark::State& state)
{
    const auto x = tone(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(readout::channelize(x, kAdc));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Channelize)->Arg(4096)->Arg(65536);

void BM_StreamingPush(benchmark::State& state)
{
    const auto x = tone(1024);
    readout::Channelizer bank(readout::PfbConfig{}, kAdc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bank.push(x));
    }
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_StreamingPush);

void BM_Demodulate(benchmark::State& state)
{
    const auto streams = readout::channelize(tone(65536), kAdc);
    const dsp::DdsChannel lo{460e6 - streams[3].centre_hz, 0.0, 1.0, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(readout::demodulate_accumulate(streams[3], lo, 4096));
    }
}
BENCHMARK(BM_Demodulate);

}  // namespace
