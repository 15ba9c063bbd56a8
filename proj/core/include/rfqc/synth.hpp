#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "rfqc/dds.hpp"
#include "rfqc/envelope.hpp"
#include "rfqc/waveform.hpp"

namespace rfqc::dsp {

/// Generator resource limits.
struct GeneratorConfig {
    std::size_t max_envelope_samples = 65536;  ///< envelope memory, in stored samples
    std::size_t max_mux_tones = 8;
    InterpolatorConfig interpolator{};
};

/// One output sample of a DDS generator: gain * envelope * exp(i * phase).
inline Complex dds_sample(double gain, Complex envelope, double phase) noexcept
{
    return gain * (envelope * std::polar(1.0, phase));
}

/// Play `env` on `ch` starting at sample `start`.
///
/// Sample k is gain * env[k] * exp(i * dds_phase_at(ch, clock, start + k)). Interpolated
/// envelopes are upsampled first, so the output has 16x as many samples as the memory holds.
/// Throws CapacityError if the envelope exceeds the configured memory, DomainError for empty
/// envelopes or a start before the channel's reset epoch.
ComplexWaveform synthesize_pulse(const DdsChannel& ch, const Envelope& env, std::int64_t start,
                                 const SampleClock& clock, const GeneratorConfig& cfg = {});

/// Multiplexed generator: pointwise sum of flat-envelope tones, each scaled by its channel gain.
/// Throws CapacityError above cfg.max_mux_tones, DomainError for an empty tone list or any
/// |freq| >= f_s/2.
ComplexWaveform synthesize_mux(std::span<const DdsChannel> tones, std::size_t length,
                               const SampleClock& clock, std::int64_t start = 0,
                               const GeneratorConfig& cfg = {});

/// Real DAC output of a complex baseband waveform (the in-phase component).
std::vector<double> real_part(const ComplexWaveform& w);

}  // namespace rfqc::dsp
