#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfqc/waveform.hpp"

namespace rfqc::dsp {

/// Register state of one direct-digital-synthesis oscillator.
///
/// The oscillator has no hidden state: its phase at any sample is a pure function of
/// (freq, phase_offset, reset_epoch, sample index). `freq` is realized through a 32-bit
/// frequency word, so the programmed frequency differs from the requested one by at most
/// half a word step (f_s / 2^33).
struct DdsChannel {
    double freq = 0.0;          ///< Hz, may be negative
    double phase_offset = 0.0;  ///< radians
    double gain = 1.0;          ///< dimensionless, [-1, 1]
    std::int64_t reset_epoch = 0;

    bool operator==(const DdsChannel&) const = default;
};

inline constexpr double kPhaseWordScale = 4294967296.0;  // 2^32

/// Nearest 32-bit frequency word for `freq` (two's complement for negative frequencies).
std::uint32_t frequency_word(double freq, const SampleClock& clock);

/// Frequency actually synthesized for `freq`, interpreting the word as signed.
double programmed_frequency(double freq, const SampleClock& clock);

/// Accumulator contents (without the phase offset) at sample `n`.
/// Throws DomainError when `n` precedes the channel's reset epoch.
std::uint32_t phase_word_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n);

/// Phase of the accumulator path at sample `n`, wrapped into [0, 2pi).
/// Throws DomainError when `n` precedes the channel's reset epoch.
double dds_phase_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n);

/// Real-valued reference path: wrap(2pi * freq * (n - epoch) / f_s + offset) evaluated in
/// extended precision with the requested (unrounded) frequency. Used as an oracle.
double reference_phase_at(const DdsChannel& ch, const SampleClock& clock, std::int64_t n);

/// Synchronous phase reset: every channel's epoch moves to `t`.
/// Throws DomainError if `t` precedes any channel's current epoch.
std::vector<DdsChannel> phase_reset(std::span<const DdsChannel> channels, std::int64_t t);

/// Wrap an angle into [0, 2pi).
double wrap_phase(double radians) noexcept;

/// Wrap an angle into (-pi, pi].
double wrap_signed(double radians) noexcept;

}  // namespace rfqc::dsp
