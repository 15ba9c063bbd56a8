#pragma once

#include <span>
#include <vector>

namespace rfqc::device {

/// Flux-tunable qubit biased at its sweet spot: f(x) = f_sweet - curvature * (flux_gain * x)^2.
struct FluxQubit {
    double f_sweet = 5e9;     ///< Hz
    double curvature = 1e9;   ///< Hz per flux quantum^2
    double flux_gain = 0.1;   ///< flux quanta per waveform unit

    double frequency(double x) const noexcept;
    /// f(x) - f_sweet.
    double detuning(double x) const noexcept;
};

std::vector<double> qubit_freq(const FluxQubit& q, std::span<const double> flux);

enum class Axis { X, Y };

/// Phase 2 pi * integral of the detuning from 0 to n / rate, for every n in [0, flux.size()].
/// The flux is linear between samples, so each interval contributes exactly
/// T (x0^2 + x0 x1 + x1^2) / 3 of the squared flux.
std::vector<double> ramsey_phase(const FluxQubit& q, std::span<const double> flux, double rate);

/// Excited population after X_pi/2, free evolution accumulating `phase`, then a pi/2 pulse
/// about `axis`: (1 + cos phase) / 2 for X, (1 + sin phase) / 2 for Y. Evaluated by multiplying
/// the 2x2 unitaries.
double ramsey_from_phase(double phase, Axis axis);

/// Ramsey population for a flux pulse of `n` samples (the first n entries of `flux`).
double ramsey_population(const FluxQubit& q, std::span<const double> flux, double rate, std::size_t n,
                         Axis axis);

/// Populations for every pulse length 0..flux.size()-1 samples.
std::vector<double> ramsey_trace(const FluxQubit& q, std::span<const double> flux, double rate, Axis axis);

/// Weak Gaussian probe used for spectroscopy.
struct Probe {
    double sigma = 7e-9;      ///< s
    double peak = 0.5;        ///< population on resonance
    double truncation = 4.0;  ///< window half width in sigmas
};

/// Half width at half maximum of the probe line: sqrt(ln 2) / (2 pi sigma).
double probe_linewidth(const Probe& probe) noexcept;

/// Probe-weighted mean qubit frequency for a probe centred `delay` seconds after sample 0.
double probed_frequency(const FluxQubit& q, std::span<const double> flux, double rate, double delay,
                        const Probe& probe = {});

/// Lorentzian response centred at the probe-weighted mean qubit frequency.
double spectroscopy_population(const FluxQubit& q, std::span<const double> flux, double rate, double delay,
                               double probe_freq, const Probe& probe = {});

}  // namespace rfqc::device
