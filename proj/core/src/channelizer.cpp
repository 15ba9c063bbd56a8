#include "rfqc/readout.hpp"

#include <cmath>
#include <numbers>

#include "rfqc/envelope.hpp"
#include "rfqc/errors.hpp"

namespace rfqc::readout {

void PfbConfig::validate() const
{
    if (n_bands < 2 || decimation < 1 || n_bands % decimation != 0) {
        throw DomainError("PFB bands must be a multiple of the decimation");
    }
    if (n_channels < 1 || n_channels > n_bands) {
        throw DomainError("PFB channel count must lie in [1, n_bands]");
    }
    if (taps_per_branch < 1) {
        throw DomainError("PFB needs at least one tap per branch");
    }
    if (!prototype.empty() && static_cast<int>(prototype.size()) != filter_length()) {
        throw DomainError("PFB prototype length must equal n_bands * taps_per_branch");
    }
}

std::vector<double> design_prototype(const PfbConfig& cfg)
{
    cfg.validate();
    const int length = cfg.filter_length();
    const double spacing = 1.0 / cfg.n_bands;  // cycles/sample
    const double a = std::numbers::pi / (2.0 * spacing);
    const double centre = 0.5 * (length - 1);
    const double norm = dsp::bessel_i0(cfg.kaiser_beta);

    std::vector<double> h(static_cast<std::size_t>(length));
    double power = 0.0;
    for (int l = 0; l < length; ++l) {
        const double t = l - centre;
        const double b = kTwoPi * t;
        // Inverse transform of cos(pi f / (2 spacing)) on |f| <= spacing.
        double ideal = 0.0;
        if (std::abs(a - std::abs(b)) < 1e-9) {
            ideal = spacing;
        } else {
            ideal = 2.0 * a * std::cos(b * spacing) / (a * a - b * b);
        }
        const double r = 2.0 * l / (length - 1) - 1.0;
        const double w = dsp::bessel_i0(cfg.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
        h[static_cast<std::size_t>(l)] = ideal * w;
        power += h[static_cast<std::size_t>(l)] * h[static_cast<std::size_t>(l)];
    }
    // Unit mean of the summed band powers.
    const double scale = 1.0 / std::sqrt(power * cfg.n_bands);
    for (auto& v : h) {
        v *= scale;
    }
    return h;
}

Channelizer::Channelizer(PfbConfig cfg, double input_rate_hz)
    : cfg_(std::move(cfg)), rate_(input_rate_hz)
{
    cfg_.validate();
    if (!(rate_ > 0.0)) {
        throw DomainError("channelizer input rate must be positive");
    }
    taps_ = cfg_.prototype.empty() ? design_prototype(cfg_) : cfg_.prototype;
    history_.assign(static_cast<std::size_t>(cfg_.filter_length() - 1), Complex{});
}

std::vector<std::vector<Complex>> Channelizer::push(std::span<const Complex> input)
{
    const int bands = cfg_.n_bands;
    const int dec = cfg_.decimation;
    const int length = cfg_.filter_length();
    const int taps = cfg_.taps_per_branch;

    std::vector<Complex> buf;
    buf.reserve(history_.size() + input.size());
    buf.insert(buf.end(), history_.begin(), history_.end());
    buf.insert(buf.end(), input.begin(), input.end());
    const std::int64_t base = consumed_ - (length - 1);  // global index of buf[0]
    const std::int64_t last = consumed_ + static_cast<std::int64_t>(input.size()) - 1;

    std::vector<Complex> twiddle(static_cast<std::size_t>(bands));
    for (int j = 0; j < bands; ++j) {
        twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * j / bands);
    }

    std::vector<std::vector<Complex>> out(static_cast<std::size_t>(cfg_.n_channels));
    std::vector<Complex> branch(static_cast<std::size_t>(bands));
    for (; next_output_ * dec <= last; ++next_output_) {
        const std::int64_t newest = next_output_ * dec - base;
        // Polyphase partial sums: u_r = sum_q h[r + M q] x[mD - r - M q]
        for (int r = 0; r < bands; ++r) {
            Complex acc{};
            for (int q = 0; q < taps; ++q) {
                const int l = r + bands * q;
                acc += taps_[static_cast<std::size_t>(l)] * buf[static_cast<std::size_t>(newest - l)];
            }
            branch[static_cast<std::size_t>(r)] = acc;
        }
        const auto shift = static_cast<int>((next_output_ * dec) % bands);
        for (int k = 0; k < cfg_.n_channels; ++k) {
            Complex acc{};
            for (int r = 0; r < bands; ++r) {
                acc += branch[static_cast<std::size_t>(r)] * twiddle[static_cast<std::size_t>((k * r) % bands)];
            }
            const int rot = ((-k * shift) % bands + bands) % bands;
            out[static_cast<std::size_t>(k)].push_back(acc * twiddle[static_cast<std::size_t>(rot)]);
        }
    }

    consumed_ += static_cast<std::int64_t>(input.size());
    history_.assign(buf.end() - (length - 1), buf.end());
    return out;
}

Complex Channelizer::response(int channel, double f_hz) const
{
    const double nu = (f_hz - channel * channel_spacing()) / rate_;
    Complex acc{};
    for (std::size_t l = 0; l < taps_.size(); ++l) {
        acc += taps_[l] * std::polar(1.0, -kTwoPi * nu * static_cast<double>(l));
    }
    return acc;
}

namespace {

std::vector<ChannelStream> to_streams(Channelizer& ch, std::span<const Complex> input)
{
    const auto& cfg = ch.config();
    if (static_cast<int>(input.size()) < cfg.filter_length()) {
        throw DomainError("input shorter than one filter span");
    }
    auto outputs = ch.push(input);
    const auto first_valid = static_cast<std::size_t>(
        (cfg.filter_length() - 1 + cfg.decimation - 1) / cfg.decimation);
    std::vector<ChannelStream> streams;
    streams.reserve(outputs.size());
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        streams.push_back(ChannelStream{static_cast<int>(k),
                                        static_cast<double>(k) * ch.channel_spacing(),
                                        SampleClock(ch.output_rate()), std::move(outputs[k]),
                                        first_valid});
    }
    return streams;
}

}  // namespace

std::vector<ChannelStream> channelize(std::span<const Complex> input, double input_rate_hz,
                                      const PfbConfig& cfg)
{
    Channelizer ch(cfg, input_rate_hz);
    return to_streams(ch, input);
}

std::vector<ChannelStream> channelize_real(std::span<const double> input, double input_rate_hz,
                                           const PfbConfig& cfg)
{
    std::vector<Complex> cplx(input.begin(), input.end());
    Channelizer ch(cfg, input_rate_hz);
    return to_streams(ch, cplx);
}

}  // namespace rfqc::readout
