#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rfqc/cli/experiments.hpp"
#include "rfqc/csv.hpp"
#include "rfqc/dds.hpp"
#include "rfqc/nyquist.hpp"
#include "rfqc/readout.hpp"
#include "rfqc/synth.hpp"

namespace rfqc::cli {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

// Ideal reconstruction of the DAC tones, sampled on the ADC clock. Each tone keeps the exact
// phase ramp of its DDS word.
std::vector<double> adc_capture(const std::vector<dsp::DdsChannel>& tones, const SampleClock& dac,
                                const SampleClock& adc, std::size_t n)
{
    std::vector<double> x(n, 0.0);
    for (const auto& t : tones) {
        const long double f = dsp::programmed_frequency(t.freq, dac);
        const long double cycles_per_sample = f / adc.rate();
        for (std::size_t k = 0; k < n; ++k) {
            long double c = cycles_per_sample * static_cast<long double>(k);
            c -= std::floor(c);
            const double phase = static_cast<double>(2.0L * std::numbers::pi_v<long double> * c) + t.phase_offset;
            x[k] += t.gain * std::cos(phase);
        }
    }
    return x;
}

}  // namespace

Report mux_loopback(const Config& c, std::uint64_t seed)
{
    const SampleClock dac(c.quantity("dac_rate", Unit::frequency, 6881.28e6));
    const SampleClock adc(c.quantity("adc_rate", Unit::frequency, 2457.6e6));
    const auto freqs = c.quantities("tones", Unit::frequency, {880e6, 134e6, 1772e6, 1041e6});
    const double amplitude = c.number("amplitude", 0.2);
    const auto samples = static_cast<std::size_t>(c.integer("samples", 65536));
    const auto window = static_cast<std::size_t>(c.integer("window", 4096));
    const double amp_tol = c.number("amplitude_tolerance", 0.01);
    const double phase_tol = c.quantity("phase_tolerance", Unit::angle, 1.0 / kDeg) * kDeg;
    if (freqs.empty() || freqs.size() > readout::kMaxSimultaneousReadouts) {
        throw ConfigError("mux-loopback needs 1 to 4 tones");
    }
    if (!(amplitude > 0.0) || amplitude * static_cast<double>(freqs.size()) > 1.0) {
        throw ConfigError("tone amplitudes must be positive and sum to at most 1");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<dsp::DdsChannel> tones;
    for (double f : freqs) {
        tones.push_back({f, angle(rng), amplitude, 0});
    }
    const auto bins = readout::assign_bins(freqs, adc.rate());

    const auto dac_wave = dsp::synthesize_mux(tones, std::min<std::size_t>(samples, 2048), dac);
    const auto x = adc_capture(tones, dac, adc, samples);
    const readout::PfbConfig pfb;
    readout::Channelizer bank(pfb, adc.rate());
    const auto streams = readout::channelize_real(x, adc.rate(), pfb);

    Report r;
    io::CsvTable table{{"tone", "dac_hz", "alias_hz", "channel", "bin", "amplitude_in", "amplitude_out",
                        "phase_in_deg", "phase_out_deg"},
                       {}};
    double worst_amp = 0.0;
    double worst_phase = 0.0;
    for (std::size_t i = 0; i < tones.size(); ++i) {
        const double f = dsp::programmed_frequency(tones[i].freq, dac);
        const double alias = dsp::fold_frequency(f, adc.rate());
        const bool inverted = dsp::is_inverted(f, adc.rate());
        const int k = readout::nearest_channel(f, adc.rate(), pfb);
        const auto& stream = streams.at(static_cast<std::size_t>(k));
        const dsp::DdsChannel lo{alias - stream.centre_hz, 0.0, 1.0, 0};
        const auto res = readout::demodulate_accumulate(stream, lo, window);
        const Complex mean = res.value() / static_cast<double>(res.n_samples);
        const Complex measured = mean / (0.5 * bank.response(k, alias));
        const double phase_in = inverted ? -tones[i].phase_offset : tones[i].phase_offset;
        const double amp_err = std::abs(std::abs(measured) - amplitude) / amplitude;
        const double phase_err = std::abs(dsp::wrap_signed(std::arg(measured) - phase_in)) * kDeg;
        worst_amp = std::max(worst_amp, amp_err);
        worst_phase = std::max(worst_phase, phase_err);
        table.rows.push_back({static_cast<double>(i), f, alias, static_cast<double>(k),
                              static_cast<double>(bins[i]), amplitude, std::abs(measured),
                              dsp::wrap_phase(phase_in) * kDeg, dsp::wrap_phase(std::arg(measured)) * kDeg});
    }
    r.check("max_amplitude_error", worst_amp, Relation::less, amp_tol);
    r.check("max_phase_error_deg", worst_phase, Relation::less, phase_tol);
    r.value("tones", static_cast<double>(tones.size()));
    r.value("window_samples", static_cast<double>(window));
    r.trace("tones", std::move(table));

    std::ostringstream wave;
    io::write_waveform_csv(wave, dac_wave);
    r.files.emplace_back("dac_waveform.csv", wave.str());
    return r;
}

}  // namespace rfqc::cli
