#pragma once

#include <cstddef>
#include <vector>

#include "rfqc/waveform.hpp"

namespace rfqc::dsp {

enum class EnvelopeShape { gaussian, drag, triangle, flat, user };

/// Envelope memory contents. `rate_divisor` is 1 for full-speed generators (one envelope
/// sample per DAC sample) and 16 for interpolated generators.
struct Envelope {
    std::vector<Complex> samples;
    int rate_divisor = 1;
    EnvelopeShape shape = EnvelopeShape::user;

    std::size_t size() const noexcept { return samples.size(); }
    bool operator==(const Envelope&) const = default;
};

inline constexpr int kInterpolationFactor = 16;

/// Throws DomainError if the divisor is not 1 or 16, or any |sample| exceeds 1.
void validate(const Envelope& env);

/// Gaussian centred in the buffer, peak `amplitude`.
Envelope make_gaussian(std::size_t length, double sigma, double amplitude = 1.0, int rate_divisor = 1);

/// DRAG pulse: gaussian in-phase, `alpha * dG/dt` (per sample) in quadrature. Scaled so the
/// peak magnitude equals `amplitude`.
Envelope make_drag(std::size_t length, double sigma, double alpha, double amplitude = 1.0,
                   int rate_divisor = 1);

/// Symmetric triangle rising from 0 to `amplitude` at the centre.
Envelope make_triangle(std::size_t length, double amplitude = 1.0, int rate_divisor = 1);

Envelope make_flat(std::size_t length, double amplitude = 1.0, int rate_divisor = 1);

/// Wrap caller-supplied samples; validated.
Envelope make_user(std::vector<Complex> samples, int rate_divisor = 1);

/// Windowed-sinc interpolator for the 1/16-rate envelope path.
struct InterpolatorConfig {
    int taps_per_phase = 16;
    double kaiser_beta = 8.0;
};

/// The prototype kernel h(d) for output offsets d = -(16*taps/2 - 1) .. +(16*taps/2 - 1),
/// with each of the 16 polyphase branches normalized to unit DC gain.
/// Index 0 of the returned vector corresponds to the most negative offset.
std::vector<double> interpolation_kernel(const InterpolatorConfig& cfg = {});

/// Upsample a rate_divisor=16 envelope to the DAC rate. Samples beyond either end are held
/// at the end values, so constant envelopes stay exactly constant. Output length is 16x.
/// Throws DomainError for empty envelopes or a divisor other than 16.
Envelope interpolate_envelope(const Envelope& env, const InterpolatorConfig& cfg = {});

/// Zeroth-order modified Bessel function of the first kind.
double bessel_i0(double x) noexcept;

}  // namespace rfqc::dsp
