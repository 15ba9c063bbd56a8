#include "rfqc/readout.hpp"

#include <cmath>
#include <sstream>

#include "rfqc/errors.hpp"
#include "rfqc/nyquist.hpp"

namespace rfqc::readout {

ReadoutResult demodulate_accumulate(const ChannelStream& stream, const dsp::DdsChannel& dds,
                                    std::size_t window)
{
    return demodulate_accumulate(stream, dds, window, stream.first_valid);
}

ReadoutResult demodulate_accumulate(const ChannelStream& stream, const dsp::DdsChannel& dds,
                                    std::size_t window, std::size_t first)
{
    if (window == 0) {
        throw DomainError("readout window must be nonzero");
    }
    if (first + window > stream.samples.size()) {
        throw DomainError("readout window runs past the end of the stream");
    }
    Complex acc{};
    for (std::size_t k = first; k < first + window; ++k) {
        const double phase = dsp::dds_phase_at(dds, stream.clock, static_cast<std::int64_t>(k));
        acc += stream.samples[k] * std::polar(1.0, -phase);
    }
    return ReadoutResult{acc.real(), acc.imag(), stream.channel, window};
}

void check_readout_outputs(std::size_t requested)
{
    if (requested > kMaxSimultaneousReadouts) {
        throw CapacityError("at most " + std::to_string(kMaxSimultaneousReadouts) +
                            " channels can be read out simultaneously, requested " +
                            std::to_string(requested));
    }
}

double bin_width(double f_adc)
{
    if (!(f_adc > 0.0)) {
        throw DomainError("ADC rate must be positive");
    }
    return f_adc / 16.0;
}

int assign_bin(double f, double f_adc)
{
    const double folded = dsp::fold_frequency(f, f_adc);
    if (!(folded < f_adc / 2.0)) {
        throw DomainError("tone aliases onto the Nyquist frequency");
    }
    return static_cast<int>(std::floor(folded / bin_width(f_adc)));
}

std::vector<int> assign_bins(std::span<const double> freqs, double f_adc)
{
    std::vector<int> bins;
    bins.reserve(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        bins.push_back(assign_bin(freqs[i], f_adc));
        for (std::size_t j = 0; j < i; ++j) {
            if (bins[j] == bins[i]) {
                std::ostringstream msg;
                msg << "tones " << j << " (" << freqs[j] << " Hz) and " << i << " (" << freqs[i]
                    << " Hz) share readout bin " << bins[i];
                throw CollisionError(msg.str(), j, i);
            }
        }
    }
    return bins;
}

int nearest_channel(double f, double f_adc, const PfbConfig& cfg)
{
    const double folded = dsp::fold_frequency(f, f_adc);
    const double spacing = f_adc / cfg.n_bands;
    const auto k = static_cast<int>(std::lround(folded / spacing));
    return std::min(k, cfg.n_channels - 1);
}

}  // namespace rfqc::readout
