#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfqc/dds.hpp"
#include "rfqc/errors.hpp"
#include "rfqc/fixed_point.hpp"
#include "rfqc/nyquist.hpp"

using namespace rfqc;
using namespace rfqc::dsp;

namespace {

// Exact phase fraction freq_hz * n / rate_hz for integer Hz rates, in cycles.
double rational_cycles(std::int64_t freq_hz, std::int64_t rate_hz, std::int64_t n)
{
    const __int128 num = static_cast<__int128>(freq_hz) * n;
    __int128 rem = num % rate_hz;
    if (rem < 0) {
        rem += rate_hz;
    }
    return static_cast<double>(static_cast<long double>(rem) / static_cast<long double>(rate_hz));
}

double angle_gap(double a, double b)
{
    return std::abs(wrap_signed(a - b));
}

}  // namespace

TEST(Dds, QuarterRateTone)
{
    const SampleClock clk(1e9);
    const DdsChannel ch{250e6, 0.0, 1.0, 0};
    EXPECT_DOUBLE_EQ(dds_phase_at(ch, clk, 3), 3.0 * std::numbers::pi / 2.0);
}

TEST(Dds, DcKeepsOffset)
{
    const SampleClock clk(6881.28e6);
    const DdsChannel ch{0.0, 1.0, 1.0, 0};
    for (std::int64_t n : {0, 1, 17, 1000000}) {
        EXPECT_DOUBLE_EQ(dds_phase_at(ch, clk, n), 1.0);
    }
}

TEST(Dds, ExtendedPrecisionOracle)
{
    const std::int64_t rate = 6'881'280'000;
    const std::int64_t freq = 91'000'000;
    const SampleClock clk(static_cast<double>(rate));
    const DdsChannel ch{static_cast<double>(freq), 0.0, 1.0, 0};
    const std::int64_t n = 1'000'000;

    const double oracle = kTwoPi * rational_cycles(freq, rate, n);
    EXPECT_LT(angle_gap(reference_phase_at(ch, clk, n), oracle), 1e-9);

    // The 32-bit word path is exact against its own integer arithmetic...
    const std::uint64_t word = frequency_word(ch.freq, clk);
    const auto exact_word = static_cast<std::uint32_t>((word * static_cast<std::uint64_t>(n)) & 0xffffffffULL);
    EXPECT_EQ(phase_word_at(ch, clk, n), exact_word);
    // ...and departs from the ideal phase by at most n half word steps.
    const double bound = kTwoPi * static_cast<double>(n) / 8589934592.0;
    EXPECT_LT(angle_gap(dds_phase_at(ch, clk, n), oracle), bound);
}

TEST(Dds, FrequencyWordRounding)
{
    const SampleClock clk(6881.28e6);
    for (double f : {91e6, -816e6, 822e6, 1e3, -1.0}) {
        EXPECT_LE(std::abs(programmed_frequency(f, clk) - f), clk.rate() / 8589934592.0 * 1.0000001);
    }
}

TEST(Dds, SampleBeforeEpochIsRejected)
{
    const SampleClock clk(1e9);
    const DdsChannel ch{10e6, 0.0, 1.0, 100};
    EXPECT_THROW(dds_phase_at(ch, clk, 99), DomainError);
    EXPECT_NO_THROW(dds_phase_at(ch, clk, 100));
}

TEST(Dds, ResetSetsPhasesToOffsets)
{
    const SampleClock clk(6881.28e6);
    std::vector<DdsChannel> chans{{123.4e6, 0.0, 1.0, 0}, {987.6e6, std::numbers::pi / 2.0, 1.0, 7}};
    const auto reset = phase_reset(chans, 5000);
    EXPECT_DOUBLE_EQ(dds_phase_at(reset[0], clk, 5000), 0.0);
    EXPECT_DOUBLE_EQ(dds_phase_at(reset[1], clk, 5000), std::numbers::pi / 2.0);
    EXPECT_THROW(phase_reset(reset, 4999), DomainError);
}

TEST(Dds, ResetMakesPhaseDependOnlyOnElapsedSamples)
{
    const SampleClock clk(6881.28e6);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> f(-3e9, 3e9);
    std::uniform_int_distribution<std::int64_t> t(0, 1'000'000'000);
    for (int i = 0; i < 200; ++i) {
        const DdsChannel base{f(rng), 0.3, 1.0, 0};
        const std::int64_t a = t(rng);
        const std::int64_t b = t(rng);
        const auto ra = phase_reset(std::span(&base, 1), a)[0];
        const auto rb = phase_reset(std::span(&base, 1), b)[0];
        for (std::int64_t k : {0, 1, 12345}) {
            EXPECT_EQ(dds_phase_at(ra, clk, a + k), dds_phase_at(rb, clk, b + k));
        }
    }
}

TEST(Dds, WrapRanges)
{
    EXPECT_DOUBLE_EQ(wrap_phase(-0.5), kTwoPi - 0.5);
    EXPECT_DOUBLE_EQ(wrap_phase(kTwoPi), 0.0);
    EXPECT_LT(wrap_phase(-1e-300), kTwoPi);
    EXPECT_DOUBLE_EQ(wrap_signed(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0);
    EXPECT_DOUBLE_EQ(wrap_signed(std::numbers::pi), std::numbers::pi);
}

TEST(FixedPoint, ZeroAndFullScale)
{
    const FixedPointFormat fmt;
    bool sat = false;
    EXPECT_EQ(to_code(0.0, fmt, sat), 0);
    EXPECT_EQ(to_code(1.0, fmt, sat), fmt.max_code());
    EXPECT_FALSE(sat);
    EXPECT_EQ(to_code(1.5, fmt, sat), fmt.max_code());
    EXPECT_TRUE(sat);
    sat = false;
    EXPECT_EQ(to_code(-1.0, fmt, sat), fmt.min_code());
    EXPECT_FALSE(sat);
}

TEST(FixedPoint, RoundsHalfToEven)
{
    const FixedPointFormat fmt{8, 1};
    bool sat = false;
    EXPECT_EQ(to_code(1.25, fmt, sat), 2);
    EXPECT_EQ(to_code(1.75, fmt, sat), 4);
    EXPECT_EQ(to_code(-1.25, fmt, sat), -2);
}

TEST(FixedPoint, QuantizeIsIdempotent)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexWaveform w;
    w.clock = SampleClock(1e9);
    for (int i = 0; i < 4096; ++i) {
        w.samples.emplace_back(u(rng), u(rng));
    }
    for (const FixedPointFormat fmt : {FixedPointFormat{}, FixedPointFormat{12, 11}, FixedPointFormat{32, 20}}) {
        const auto once = quantize(w, fmt);
        const auto twice = quantize(once.waveform, fmt);
        EXPECT_EQ(once.waveform.samples, twice.waveform.samples);
        EXPECT_FALSE(once.saturated);
    }
}

TEST(FixedPoint, SaturationIsFlagged)
{
    ComplexWaveform w;
    w.samples = {{0.5, 0.0}, {0.0, -1.25}};
    const auto q = quantize(w);
    EXPECT_TRUE(q.saturated);
    EXPECT_DOUBLE_EQ(q.waveform.samples[1].imag(), -1.0);
}

TEST(FixedPoint, FormatLimits)
{
    EXPECT_THROW((FixedPointFormat{16, 0}.validate()), DomainError);
    EXPECT_THROW((FixedPointFormat{33, 8}.validate()), DomainError);
    EXPECT_THROW((FixedPointFormat{8, 9}.validate()), DomainError);
    EXPECT_NO_THROW((FixedPointFormat{32, 32}.validate()));
}

TEST(Nyquist, ZonesAndFolding)
{
    const double fs = 2457.6e6;
    EXPECT_EQ(nyquist_zone(91e6, fs), 1);
    EXPECT_EQ(nyquist_zone(1300e6, fs), 2);
    EXPECT_EQ(nyquist_zone(-1300e6, fs), 2);
    EXPECT_NEAR(fold_frequency(1300e6, fs), fs - 1300e6, 1e-3);
    EXPECT_NEAR(fold_frequency(2500e6, fs), 2500e6 - fs, 1e-3);
    EXPECT_TRUE(is_inverted(1300e6, fs));
    EXPECT_FALSE(is_inverted(2500e6, fs));
}

TEST(Nyquist, ZoneGainTable)
{
    EXPECT_GT(zone_gain(DacMode::normal, 1), zone_gain(DacMode::normal, 2));
    EXPECT_GT(zone_gain(DacMode::mix, 2), zone_gain(DacMode::normal, 2));
    EXPECT_EQ(zone_gain(DacMode::normal, 5), 0.0);
}
