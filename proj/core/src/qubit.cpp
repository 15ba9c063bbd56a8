#include "rfqc/qubit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "rfqc/errors.hpp"
#include "rfqc/waveform.hpp"

namespace rfqc::device {

double FluxQubit::frequency(double x) const noexcept
{
    return f_sweet + detuning(x);
}

double FluxQubit::detuning(double x) const noexcept
{
    const double phi = flux_gain * x;
    return -curvature * phi * phi;
}

std::vector<double> qubit_freq(const FluxQubit& q, std::span<const double> flux)
{
    std::vector<double> f(flux.size());
    for (std::size_t n = 0; n < flux.size(); ++n) {
        f[n] = q.frequency(flux[n]);
    }
    return f;
}

std::vector<double> ramsey_phase(const FluxQubit& q, std::span<const double> flux, double rate)
{
    if (!(rate > 0.0)) {
        throw DomainError("sample rate must be positive");
    }
    const double scale = -kTwoPi * q.curvature * q.flux_gain * q.flux_gain / rate;
    std::vector<double> phase(flux.size() + 1, 0.0);
    long double acc = 0;
    for (std::size_t n = 0; n < flux.size(); ++n) {
        const double x0 = flux[n];
        const double x1 = n + 1 < flux.size() ? flux[n + 1] : flux[n];
        acc += (x0 * x0 + x0 * x1 + x1 * x1) / 3.0;
        phase[n + 1] = static_cast<double>(scale * acc);
    }
    return phase;
}

double ramsey_from_phase(double phase, Axis axis)
{
    using M2 = Eigen::Matrix2cd;
    const double r = std::numbers::sqrt2 / 2.0;
    const Complex i{0.0, 1.0};
    M2 x90;
    x90 << r, -i * r, -i * r, r;
    M2 y90;
    y90 << r, -r, r, r;
    M2 free = M2::Zero();
    free(0, 0) = 1.0;
    free(1, 1) = std::polar(1.0, phase);
    const M2 u = (axis == Axis::X ? x90 : y90) * free * x90;
    return std::norm(u(1, 0));
}

double ramsey_population(const FluxQubit& q, std::span<const double> flux, double rate, std::size_t n, Axis axis)
{
    if (n > flux.size()) {
        throw DomainError("Ramsey length exceeds the flux pulse");
    }
    const auto phase = ramsey_phase(q, flux.first(n), rate);
    return ramsey_from_phase(phase.back(), axis);
}

std::vector<double> ramsey_trace(const FluxQubit& q, std::span<const double> flux, double rate, Axis axis)
{
    const auto phase = ramsey_phase(q, flux, rate);
    std::vector<double> p(flux.size());
    for (std::size_t n = 0; n < flux.size(); ++n) {
        p[n] = ramsey_from_phase(phase[n], axis);
    }
    return p;
}

double probe_linewidth(const Probe& probe) noexcept
{
    return std::sqrt(std::numbers::ln2) / (kTwoPi * probe.sigma);
}

double probed_frequency(const FluxQubit& q, std::span<const double> flux, double rate, double delay,
                        const Probe& probe)
{
    if (!(probe.sigma > 0.0) || !(rate > 0.0)) {
        throw DomainError("probe width and sample rate must be positive");
    }
    const double centre = delay * rate;
    const double half = probe.truncation * probe.sigma * rate;
    const auto first = static_cast<std::int64_t>(std::ceil(centre - half));
    const auto last = static_cast<std::int64_t>(std::floor(centre + half));
    const auto size = static_cast<std::int64_t>(flux.size());
    double wsum = 0.0;
    double fsum = 0.0;
    for (std::int64_t n = first; n <= last; ++n) {
        double x = 0.0;
        if (n >= size) {
            x = flux.empty() ? 0.0 : flux.back();
        } else if (n >= 0) {
            x = flux[static_cast<std::size_t>(n)];
        }
        const double u = (static_cast<double>(n) - centre) / (probe.sigma * rate);
        const double w = std::exp(-0.5 * u * u);
        wsum += w;
        fsum += w * q.detuning(x);
    }
    return q.f_sweet + fsum / wsum;
}

double spectroscopy_population(const FluxQubit& q, std::span<const double> flux, double rate, double delay,
                               double probe_freq, const Probe& probe)
{
    const double centre = probed_frequency(q, flux, rate, delay, probe);
    const double gamma = probe_linewidth(probe);
    const double d = probe_freq - centre;
    return probe.peak * gamma * gamma / (gamma * gamma + d * d);
}

}  // namespace rfqc::device
