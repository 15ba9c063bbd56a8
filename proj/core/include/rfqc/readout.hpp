#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfqc/dds.hpp"
#include "rfqc/waveform.hpp"

namespace rfqc::readout {

/// Oversampled DFT filter bank. The bank has `n_bands` bands spaced f_s/n_bands apart; each
/// band's response is a half-cosine reaching zero at the neighbouring band centres, so
/// adjacent passbands overlap by 50% and the squared responses sum to one across the band.
/// Outputs are decimated by `decimation` (n_bands/2, i.e. 2x oversampled).
struct PfbConfig {
    int n_bands = 16;
    int n_channels = 8;      ///< channels 0..n_channels-1 are returned
    int decimation = 8;
    int taps_per_branch = 8;
    double kaiser_beta = 1.0;
    std::vector<double> prototype;  ///< n_bands * taps_per_branch taps; designed when empty

    /// Throws DomainError for inconsistent settings.
    void validate() const;
    int filter_length() const noexcept { return n_bands * taps_per_branch; }
};

/// Half-cosine prototype windowed by a Kaiser window, scaled so the band powers summed over
/// all n_bands channels average to one across frequency.
std::vector<double> design_prototype(const PfbConfig& cfg);

/// Peak deviation of the summed band power from one for the default design.
inline constexpr double kPfbRippleBound = 5e-3;

/// One decimated channel. `samples[m]` corresponds to input sample m * decimation.
struct ChannelStream {
    int channel = 0;
    double centre_hz = 0.0;
    SampleClock clock{1.0};
    std::vector<Complex> samples;
    std::size_t first_valid = 0;  ///< earlier outputs see the zero history before the input
};

/// Streaming polyphase channelizer. Single writer; distinct instances are independent.
class Channelizer {
public:
    Channelizer(PfbConfig cfg, double input_rate_hz);

    const PfbConfig& config() const noexcept { return cfg_; }
    double input_rate() const noexcept { return rate_; }
    double channel_spacing() const noexcept { return rate_ / cfg_.n_bands; }
    double output_rate() const noexcept { return rate_ / cfg_.decimation; }
    const std::vector<double>& prototype() const noexcept { return taps_; }

    /// Feed input samples; returns the outputs produced by this call, one vector per channel.
    std::vector<std::vector<Complex>> push(std::span<const Complex> input);

    /// Complex gain seen by a tone at `f_hz` in `channel`, referenced so that an input tone
    /// A exp(i 2 pi f n / f_s) appears at output m as A * response * exp(i 2 pi (f - f_k) m D / f_s).
    Complex response(int channel, double f_hz) const;

    /// Total input samples consumed so far.
    std::int64_t consumed() const noexcept { return consumed_; }

private:
    PfbConfig cfg_;
    double rate_;
    std::vector<double> taps_;
    std::vector<Complex> history_;  // newest sample last, length filter_length - 1
    std::int64_t consumed_ = 0;
    std::int64_t next_output_ = 0;
};

/// Channelize a whole buffer. Throws DomainError if the input is shorter than one filter span.
std::vector<ChannelStream> channelize(std::span<const Complex> input, double input_rate_hz,
                                      const PfbConfig& cfg = {});

/// Real ADC stream: processed as a complex stream with zero quadrature. A real tone of
/// amplitude A appears with amplitude A/2 at its positive-frequency channel.
std::vector<ChannelStream> channelize_real(std::span<const double> input, double input_rate_hz,
                                           const PfbConfig& cfg = {});

struct ReadoutResult {
    double i = 0.0;
    double q = 0.0;
    int channel = 0;
    std::size_t n_samples = 0;

    Complex value() const noexcept { return {i, q}; }
};

/// Accumulate stream[k] * conj(exp(i * dds phase at k)) over `window` samples starting at
/// `first` (defaults to the stream's first valid sample). The DDS runs on the stream clock.
/// Throws DomainError for window == 0 or a window running past the stream end.
ReadoutResult demodulate_accumulate(const ChannelStream& stream, const dsp::DdsChannel& dds,
                                    std::size_t window);
ReadoutResult demodulate_accumulate(const ChannelStream& stream, const dsp::DdsChannel& dds,
                                    std::size_t window, std::size_t first);

inline constexpr std::size_t kMaxSimultaneousReadouts = 4;

/// Throws CapacityError if more than kMaxSimultaneousReadouts distinct outputs are requested.
void check_readout_outputs(std::size_t requested);

/// Width of one readout frequency bin: f_adc / 16.
double bin_width(double f_adc);

/// floor(folded |f| / (f_adc / 16)). Throws DomainError if the alias sits on Nyquist.
int assign_bin(double f, double f_adc);

/// Bins of a tone set. Throws CollisionError naming the first colliding pair.
std::vector<int> assign_bins(std::span<const double> freqs, double f_adc);

/// Channel whose centre is nearest the folded tone, clamped to the returned channels.
int nearest_channel(double f, double f_adc, const PfbConfig& cfg = {});

}  // namespace rfqc::readout
