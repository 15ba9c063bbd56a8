#include "rfqc/fixed_point.hpp"

#include <cmath>

#include "rfqc/errors.hpp"

namespace rfqc::dsp {

void FixedPointFormat::validate() const
{
    if (!(0 < frac_bits && frac_bits <= total_bits && total_bits <= 32)) {
        throw DomainError("fixed-point format needs 0 < frac_bits <= total_bits <= 32");
    }
}

double FixedPointFormat::lsb() const noexcept
{
    return std::ldexp(1.0, -frac_bits);
}

std::int64_t to_code(double x, const FixedPointFormat& fmt, bool& saturated) noexcept
{
    // nearbyint honours the default FE_TONEAREST mode: ties go to even.
    const double scaled = std::nearbyint(std::ldexp(x, fmt.frac_bits));
    if (scaled > static_cast<double>(fmt.max_code())) {
        // Positive full scale sits one LSB above the top code.
        if (x > std::ldexp(1.0, fmt.total_bits - 1 - fmt.frac_bits)) {
            saturated = true;
        }
        return fmt.max_code();
    }
    if (scaled < static_cast<double>(fmt.min_code())) {
        saturated = true;
        return fmt.min_code();
    }
    return static_cast<std::int64_t>(scaled);
}

QuantizedWaveform quantize(const ComplexWaveform& w, const FixedPointFormat& fmt)
{
    fmt.validate();
    QuantizedWaveform out{w, false};
    for (auto& s : out.waveform.samples) {
        const auto re = to_code(s.real(), fmt, out.saturated);
        const auto im = to_code(s.imag(), fmt, out.saturated);
        s = {std::ldexp(static_cast<double>(re), -fmt.frac_bits),
             std::ldexp(static_cast<double>(im), -fmt.frac_bits)};
    }
    return out;
}

}  // namespace rfqc::dsp
