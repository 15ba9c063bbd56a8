#pragma once

#include <cstdint>

#include "rfqc/waveform.hpp"

namespace rfqc::dsp {

/// Two's complement converter word: `total_bits` wide with `frac_bits` fractional bits.
struct FixedPointFormat {
    int total_bits = 16;
    int frac_bits = 15;

    /// Throws DomainError unless 0 < frac_bits <= total_bits <= 32.
    void validate() const;
    std::int64_t max_code() const noexcept { return (std::int64_t{1} << (total_bits - 1)) - 1; }
    std::int64_t min_code() const noexcept { return -(std::int64_t{1} << (total_bits - 1)); }
    double lsb() const noexcept;
};

struct QuantizedWaveform {
    ComplexWaveform waveform;
    bool saturated = false;  ///< some component was clamped beyond full scale
};

/// Round-to-nearest-even at frac_bits with saturation. Positive full scale (+1.0 for the
/// default 16/15 format) maps to the top code without setting the flag; anything beyond full
/// scale saturates and flags. Idempotent.
QuantizedWaveform quantize(const ComplexWaveform& w, const FixedPointFormat& fmt = {});

/// Integer code of one real value; sets `saturated` on clamping beyond full scale.
std::int64_t to_code(double x, const FixedPointFormat& fmt, bool& saturated) noexcept;

}  // namespace rfqc::dsp
