#include "rfqc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rfqc/errors.hpp"

namespace rfqc::dsp {

namespace {

constexpr double kMagnitudeSlack = 1e-12;

void check_divisor(int rate_divisor)
{
    if (rate_divisor != 1 && rate_divisor != kInterpolationFactor) {
        throw DomainError("envelope rate divisor must be 1 or 16");
    }
}

double gaussian_at(double k, double centre, double sigma)
{
    const double x = (k - centre) / sigma;
    return std::exp(-0.5 * x * x);
}

}  // namespace

void validate(const Envelope& env)
{
    check_divisor(env.rate_divisor);
    for (const auto& s : env.samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw DomainError("envelope contains non-finite samples");
        }
        if (std::abs(s) > 1.0 + kMagnitudeSlack) {
            throw DomainError("envelope magnitude exceeds full scale");
        }
    }
}

Envelope make_gaussian(std::size_t length, double sigma, double amplitude, int rate_divisor)
{
    if (length == 0 || !(sigma > 0.0)) {
        throw DomainError("gaussian needs a nonzero length and positive sigma");
    }
    Envelope env{{}, rate_divisor, EnvelopeShape::gaussian};
    env.samples.resize(length);
    const double centre = 0.5 * static_cast<double>(length - 1);
    for (std::size_t k = 0; k < length; ++k) {
        env.samples[k] = amplitude * gaussian_at(static_cast<double>(k), centre, sigma);
    }
    validate(env);
    return env;
}

Envelope make_drag(std::size_t length, double sigma, double alpha, double amplitude, int rate_divisor)
{
    if (length == 0 || !(sigma > 0.0)) {
        throw DomainError("drag needs a nonzero length and positive sigma");
    }
    Envelope env{{}, rate_divisor, EnvelopeShape::drag};
    env.samples.resize(length);
    const double centre = 0.5 * static_cast<double>(length - 1);
    double peak = 0.0;
    for (std::size_t k = 0; k < length; ++k) {
        const double t = static_cast<double>(k) - centre;
        const double g = gaussian_at(static_cast<double>(k), centre, sigma);
        const double dg = -t / (sigma * sigma) * g;
        env.samples[k] = {g, alpha * dg};
        peak = std::max(peak, std::abs(env.samples[k]));
    }
    for (auto& s : env.samples) {
        s *= amplitude / peak;
    }
    validate(env);
    return env;
}

Envelope make_triangle(std::size_t length, double amplitude, int rate_divisor)
{
    if (length == 0) {
        throw DomainError("triangle needs a nonzero length");
    }
    Envelope env{{}, rate_divisor, EnvelopeShape::triangle};
    env.samples.resize(length);
    const double half = 0.5 * static_cast<double>(length - 1);
    for (std::size_t k = 0; k < length; ++k) {
        const double x = half > 0.0 ? 1.0 - std::abs(static_cast<double>(k) - half) / half : 1.0;
        env.samples[k] = amplitude * x;
    }
    validate(env);
    return env;
}

Envelope make_flat(std::size_t length, double amplitude, int rate_divisor)
{
    if (length == 0) {
        throw DomainError("flat envelope needs a nonzero length");
    }
    Envelope env{std::vector<Complex>(length, Complex{amplitude, 0.0}), rate_divisor,
                 EnvelopeShape::flat};
    validate(env);
    return env;
}

Envelope make_user(std::vector<Complex> samples, int rate_divisor)
{
    Envelope env{std::move(samples), rate_divisor, EnvelopeShape::user};
    validate(env);
    return env;
}

double bessel_i0(double x) noexcept
{
    // Power series; converges quickly for the beta range used by Kaiser windows.
    double sum = 1.0;
    double term = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-17) {
            break;
        }
    }
    return sum;
}

std::vector<double> interpolation_kernel(const InterpolatorConfig& cfg)
{
    if (cfg.taps_per_phase < 2 || cfg.taps_per_phase % 2 != 0) {
        throw DomainError("interpolator needs an even tap count per phase");
    }
    const int factor = kInterpolationFactor;
    const int half = factor * cfg.taps_per_phase / 2;  // window reaches zero at +-half
    const int span = 2 * half - 1;
    std::vector<double> h(static_cast<std::size_t>(span));
    const double norm = bessel_i0(cfg.kaiser_beta);
    for (int i = 0; i < span; ++i) {
        const int d = i - (half - 1);
        double sinc = 1.0;
        if (d % factor == 0) {
            sinc = d == 0 ? 1.0 : 0.0;
        } else {
            const double x = std::numbers::pi * static_cast<double>(d) / factor;
            sinc = std::sin(x) / x;
        }
        const double r = static_cast<double>(d) / half;
        const double w = bessel_i0(cfg.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
        h[static_cast<std::size_t>(i)] = sinc * w;
    }
    // Unit DC gain per polyphase branch.
    for (int phase = 0; phase < factor; ++phase) {
        double sum = 0.0;
        for (int i = 0; i < span; ++i) {
            const int d = i - (half - 1);
            if (((d % factor) + factor) % factor == phase) {
                sum += h[static_cast<std::size_t>(i)];
            }
        }
        for (int i = 0; i < span; ++i) {
            const int d = i - (half - 1);
            if (((d % factor) + factor) % factor == phase) {
                h[static_cast<std::size_t>(i)] /= sum;
            }
        }
    }
    return h;
}

Envelope interpolate_envelope(const Envelope& env, const InterpolatorConfig& cfg)
{
    if (env.rate_divisor != kInterpolationFactor) {
        throw DomainError("interpolate_envelope expects a 1/16-rate envelope");
    }
    if (env.samples.empty()) {
        throw DomainError("cannot interpolate an empty envelope");
    }
    const int factor = kInterpolationFactor;
    const std::vector<double> h = interpolation_kernel(cfg);
    const int half = factor * cfg.taps_per_phase / 2;
    const auto n_in = static_cast<std::int64_t>(env.samples.size());
    const auto held = [&](std::int64_t k) {
        return env.samples[static_cast<std::size_t>(std::clamp<std::int64_t>(k, 0, n_in - 1))];
    };

    Envelope out{{}, 1, env.shape};
    out.samples.resize(static_cast<std::size_t>(n_in * factor));
    for (std::int64_t k = 0; k < n_in; ++k) {
        for (int phase = 0; phase < factor; ++phase) {
            if (phase == 0) {
                out.samples[static_cast<std::size_t>(k * factor)] = env.samples[static_cast<std::size_t>(k)];
                continue;
            }
            // out[16k + phase] = sum_m x[k - m] h(16 m + phase)
            Complex acc{};
            const int m_lo = -(half - 1 + phase) / factor;
            const int m_hi = (half - 1 - phase) / factor;
            for (int m = m_lo; m <= m_hi; ++m) {
                const int d = factor * m + phase;
                acc += held(k - m) * h[static_cast<std::size_t>(d + half - 1)];
            }
            out.samples[static_cast<std::size_t>(k * factor + phase)] = acc;
        }
    }
    return out;
}

}  // namespace rfqc::dsp
