#include "rfqc/dds.hpp"

#include <cmath>
#include <string>

#include "rfqc/errors.hpp"

namespace rfqc::dsp {

namespace {

void require_after_epoch(const DdsChannel& ch, std::int64_t n)
{
    if (n < ch.reset_epoch) {
        throw DomainError("sample " + std::to_string(n) + " precedes reset epoch " +
                          std::to_string(ch.reset_epoch));
    }
}

}  // namespace

std::uint32_t frequency_word(double freq, const SampleClock& clock)
{
    const long double cycles = static_cast<long double>(freq) / clock.rate();
    const long long word = std::llroundl(cycles * 4294967296.0L);
    return static_cast<std::uint32_t>(static_cast<unsigned long long>(word));
}

double programmed_frequency(double freq, const SampleClock& clock)
{
    const auto word = static_cast<std::int32_t>(frequency_word(freq, clock));
    // A word equal to INT32_MIN is the Nyquist tone; keep its sign as requested.
    if (word == INT32_MIN && freq > 0.0) {
        return clock.rate() / 2.0;
    }
    return static_cast<double>(word) / kPhaseWordScale * clock.rate();
}

std::uint32_t phase_word_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n)
{
    require_after_epoch(ch, n);
    const std::uint64_t word = frequency_word(ch.freq, clock);
    const auto elapsed = static_cast<std::uint64_t>(n - ch.reset_epoch) & 0xffffffffULL;
    return static_cast<std::uint32_t>((word * elapsed) & 0xffffffffULL);
}

double dds_phase_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n)
{
    const double acc = static_cast<double>(phase_word_at(ch, clock, n)) / kPhaseWordScale;
    return wrap_phase(kTwoPi * acc + ch.phase_offset);
}

double reference_phase_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n)
{
    require_after_epoch(ch, n);
    const long double cycles = static_cast<long double>(ch.freq) *
                               static_cast<long double>(n - ch.reset_epoch) / clock.rate();
    long double frac = cycles - std::floor(cycles);
    const long double phase = 2.0L * std::numbers::pi_v<long double> * frac + ch.phase_offset;
    return wrap_phase(static_cast<double>(phase));
}

std::vector<DdsChannel> phase_reset(std::span<const DdsChannel> channels, std::int64_t t)
{
    std::vector<DdsChannel> out(channels.begin(), channels.end());
    for (auto& ch : out) {
        require_after_epoch(ch, t);
        ch.reset_epoch = t;
    }
    return out;
}

double wrap_phase(double radians) noexcept
{
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a value just below 0 can round up to exactly 2pi
    if (r >= kTwoPi) {
        r -= kTwoPi;
    }
    return r;
}

double wrap_signed(double radians) noexcept
{
    double r = wrap_phase(radians);
    if (r > std::numbers::pi) {
        r -= kTwoPi;
    }
    return r;
}

}  // namespace rfqc::dsp
