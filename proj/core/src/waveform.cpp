#include "rfqc/waveform.hpp"

#include <cmath>

#include "rfqc/errors.hpp"

namespace rfqc {

SampleClock::SampleClock(double rate_hz, std::int64_t epoch) : rate_(rate_hz), epoch_(epoch)
{
    if (!(std::isfinite(rate_hz) && rate_hz > 0.0)) {
        throw DomainError("sample rate must be finite and positive");
    }
}

bool ComplexWaveform::finite() const noexcept
{
    for (const auto& s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            return false;
        }
    }
    return true;
}

double energy(const std::vector<Complex>& samples) noexcept
{
    double e = 0.0;
    for (const auto& s : samples) {
        e += std::norm(s);
    }
    return e;
}

}  // namespace rfqc
