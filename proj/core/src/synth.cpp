#include "rfqc/synth.hpp"

#include <cmath>
#include <string>

#include "rfqc/errors.hpp"

namespace rfqc::dsp {

ComplexWaveform synthesize_pulse(const DdsChannel& ch, const Envelope& env, std::int64_t start,
                                 const SampleClock& clock, const GeneratorConfig& cfg)
{
    if (env.samples.empty()) {
        throw DomainError("cannot play an empty envelope");
    }
    if (env.samples.size() > cfg.max_envelope_samples) {
        throw CapacityError("envelope of " + std::to_string(env.samples.size()) +
                            " samples exceeds generator memory of " +
                            std::to_string(cfg.max_envelope_samples));
    }
    if (start < ch.reset_epoch) {
        throw DomainError("pulse starts before the channel's reset epoch");
    }

    const Envelope* dense = &env;
    Envelope upsampled;
    if (env.rate_divisor == kInterpolationFactor) {
        upsampled = interpolate_envelope(env, cfg.interpolator);
        dense = &upsampled;
    } else if (env.rate_divisor != 1) {
        throw DomainError("envelope rate divisor must be 1 or 16");
    }

    ComplexWaveform out{{}, clock, start};
    out.samples.resize(dense->samples.size());
    for (std::size_t k = 0; k < dense->samples.size(); ++k) {
        const auto n = start + static_cast<std::int64_t>(k);
        out.samples[k] = dds_sample(ch.gain, dense->samples[k], dds_phase_at(ch, clock, n));
    }
    return out;
}

ComplexWaveform synthesize_mux(std::span<const DdsChannel> tones, std::size_t length,
                               const SampleClock& clock, std::int64_t start,
                               const GeneratorConfig& cfg)
{
    if (tones.empty()) {
        throw DomainError("mux generator needs at least one tone");
    }
    if (tones.size() > cfg.max_mux_tones) {
        throw CapacityError("mux generator supports at most " + std::to_string(cfg.max_mux_tones) +
                            " tones, got " + std::to_string(tones.size()));
    }
    for (const auto& t : tones) {
        if (!(std::abs(t.freq) < clock.rate() / 2.0)) {
            throw DomainError("mux tone frequency outside the first Nyquist zone");
        }
        if (start < t.reset_epoch) {
            throw DomainError("mux tone starts before its reset epoch");
        }
    }

    ComplexWaveform out{std::vector<Complex>(length), clock, start};
    const Complex unit{1.0, 0.0};
    for (std::size_t k = 0; k < length; ++k) {
        const auto n = start + static_cast<std::int64_t>(k);
        Complex acc{};
        for (const auto& t : tones) {
            acc += dds_sample(t.gain, unit, dds_phase_at(t, clock, n));
        }
        out.samples[k] = acc;
    }
    return out;
}

std::vector<double> real_part(const ComplexWaveform& w)
{
    std::vector<double> out(w.samples.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = w.samples[k].real();
    }
    return out;
}

}  // namespace rfqc::dsp
