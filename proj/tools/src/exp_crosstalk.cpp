#include <cmath>
#include <numbers>

#include "rfqc/cli/experiments.hpp"
#include "rfqc/compensation.hpp"
#include "rfqc/dds.hpp"

namespace rfqc::cli {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

io::CsvTable chevron_table(const device::CrosstalkScenario& s, const device::Compensation& comp,
                           const cal::CompensationOptions& o)
{
    std::vector<double> freqs;
    std::vector<double> lengths;
    for (int k = 0; k <= 80; ++k) {
        freqs.push_back(s.bare_sum() - o.chevron_span + 2.0 * o.chevron_span * k / 80.0);
    }
    for (int k = 0; k <= 100; ++k) {
        lengths.push_back(o.max_length * k / 100.0);
    }
    const auto g = device::chevron_map(s, comp, freqs, lengths);
    io::CsvTable t{{"drive_hz", "length_s", "population"}, {}};
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        for (std::size_t j = 0; j < lengths.size(); ++j) {
            t.rows.push_back({freqs[i], lengths[j], g.at(i, j)});
        }
    }
    return t;
}

}  // namespace

Report crosstalk(const Config& c, std::uint64_t)
{
    const Config sc = c.section("scenario");
    device::CrosstalkScenario s;
    try {
        s = device::scenario_with_shift(sc.quantity("stark_shift", Unit::frequency, 7e6),
                                        sc.number("coupler_leak", 0.25),
                                        sc.quantity("drive_phase", Unit::angle, 0.0));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    s.f_a = sc.quantity("f_a", Unit::frequency, s.f_a);
    s.f_b = sc.quantity("f_b", Unit::frequency, s.f_b);
    s.rabi_rate = sc.quantity("rabi_rate", Unit::frequency, s.rabi_rate);
    s.a_into_b = sc.number("a_into_b", 0.0);
    s.b_into_a = sc.number("b_into_a", 0.0);
    if (sc.has("coupler_leak_b")) {
        s.coupler_leak[1] = sc.number("coupler_leak_b");
    }
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    const Config oc = c.section("calibration");
    cal::CompensationOptions o;
    o.rounds = static_cast<int>(oc.integer("rounds", o.rounds));
    o.probe_amplitude = oc.number("probe_amplitude", o.probe_amplitude);
    o.max_amplitude = oc.number("max_amplitude", o.max_amplitude);
    o.chevron_span = oc.quantity("chevron_span", Unit::frequency, o.chevron_span);

    const double centre_tol = c.quantity("centre_tolerance", Unit::frequency, 0.05e6);
    const double expected_phase = c.quantity("expected_phase", Unit::angle, std::numbers::pi) * kDeg;
    const double phase_tol = c.quantity("phase_tolerance", Unit::angle, 2.0 / kDeg) * kDeg;

    const auto res = cal::calibrate_compensation(s, o);
    Report r;
    r.check("centre_offset_hz", std::abs(res.centre_after - s.bare_sum()), Relation::less, centre_tol);
    r.check("residual_stark_shift_hz", device::stark_shift(s, res.settings), Relation::less, centre_tol);
    if (res.settings.amplitude[0] > 0.0) {
        r.check("phase_error_deg", std::abs(dsp::wrap_signed((res.phase_deg(0) - expected_phase) / kDeg)) * kDeg,
                Relation::less, phase_tol);
    }
    r.value("centre_before_hz", res.centre_before);
    r.value("centre_after_hz", res.centre_after);
    r.value("contrast_before", res.contrast_before);
    r.value("contrast_after", res.contrast_after);
    r.value("amplitude_a", res.settings.amplitude[0]);
    r.value("amplitude_b", res.settings.amplitude[1]);
    r.value("phase_a_deg", res.phase_deg(0));
    r.value("phase_b_deg", res.phase_deg(1));
    r.notes = res.notes;
    r.trace("chevron_before", chevron_table(s, {}, o));
    r.trace("chevron_after", chevron_table(s, res.settings, o));
    io::CsvTable contrast{{"drive_hz", "contrast_before", "contrast_after"}, {}};
    for (int k = 0; k <= 80; ++k) {
        const double f = s.bare_sum() - o.chevron_span + 2.0 * o.chevron_span * k / 80.0;
        contrast.rows.push_back(
            {f, cal::measured_contrast(s, {}, f, o), cal::measured_contrast(s, res.settings, f, o)});
    }
    r.trace("contrast", std::move(contrast));
    return r;
}

}  // namespace rfqc::cli
