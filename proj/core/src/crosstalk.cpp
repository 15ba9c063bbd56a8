#include "rfqc/crosstalk.hpp"

#include <cmath>

#include "rfqc/errors.hpp"

namespace rfqc::device {

void CrosstalkScenario::validate() const
{
    for (double m : {coupler_leak[0], coupler_leak[1], a_into_b, b_into_a}) {
        if (!(std::abs(m) <= 0.25)) {
            throw DomainError("crosstalk coefficients must not exceed 0.25 in magnitude");
        }
    }
    if (!(rabi_rate > 0.0) || !(stark_coeff >= 0.0)) {
        throw DomainError("Rabi rate must be positive and the Stark coefficient non-negative");
    }
}

CrosstalkScenario scenario_with_shift(double shift_hz, double leak, double drive_phase)
{
    CrosstalkScenario s;
    s.coupler_leak = {leak, 0.0};
    s.drive_phase = drive_phase;
    const double reach = leak * s.drive_amplitude;
    if (reach == 0.0) {
        throw DomainError("a Stark shift needs nonzero crosstalk");
    }
    s.stark_coeff = shift_hz / (reach * reach);
    s.validate();
    return s;
}

std::array<Complex, 2> residual_drive(const CrosstalkScenario& s, const Compensation& c)
{
    const Complex drive = std::polar(s.drive_amplitude, s.drive_phase);
    const Complex comp_a = std::polar(c.amplitude[0], c.phase[0]);
    const Complex comp_b = std::polar(c.amplitude[1], c.phase[1]);
    return {s.coupler_leak[0] * drive + comp_a + s.b_into_a * comp_b,
            s.coupler_leak[1] * drive + comp_b + s.a_into_b * comp_a};
}

double stark_shift(const CrosstalkScenario& s, const Compensation& c)
{
    const auto r = residual_drive(s, c);
    return s.stark_coeff * (std::norm(r[0]) + std::norm(r[1]));
}

double chevron_centre(const CrosstalkScenario& s, const Compensation& c)
{
    return s.bare_sum() - stark_shift(s, c);
}

double chevron_population(const CrosstalkScenario& s, const Compensation& c, double f_drive, double length)
{
    const double omega = kTwoPi * s.rabi_rate;
    const double delta = kTwoPi * (f_drive - chevron_centre(s, c));
    const double w2 = omega * omega + delta * delta;
    const double sn = std::sin(std::sqrt(w2) * length / 2.0);
    return omega * omega / w2 * sn * sn;
}

double rabi_contrast(const CrosstalkScenario& s, const Compensation& c, double f_drive)
{
    const double omega = s.rabi_rate;
    const double delta = f_drive - chevron_centre(s, c);
    return omega * omega / (omega * omega + delta * delta);
}

ChevronGrid chevron_map(const CrosstalkScenario& s, const Compensation& c, std::span<const double> freqs,
                        std::span<const double> lengths)
{
    ChevronGrid g{{freqs.begin(), freqs.end()}, {lengths.begin(), lengths.end()}, {}};
    g.values.reserve(freqs.size() * lengths.size());
    for (double f : freqs) {
        for (double t : lengths) {
            g.values.push_back(chevron_population(s, c, f, t));
        }
    }
    return g;
}

}  // namespace rfqc::device
