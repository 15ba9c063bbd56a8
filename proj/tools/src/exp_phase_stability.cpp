#include <algorithm>
#include <cmath>
#include <numbers>

#include "program_util.hpp"
#include "rfqc/cli/experiments.hpp"
#include "rfqc/drift.hpp"
#include "rfqc/pulse_coherence.hpp"

namespace rfqc::cli {

namespace {

struct Peak {
    double period = 0.0;
    double amplitude = 0.0;
};

// Strongest sinusoid in a uniformly sampled, linearly detrended series, searched over whole
// numbers of cycles in the record.
Peak dominant_period(const std::vector<double>& y, double dt, int max_cycles)
{
    const auto n = static_cast<double>(y.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double t = static_cast<double>(i);
        st += t;
        sy += y[i];
        stt += t * t;
        sty += t * y[i];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double icpt = (sy - slope * st) / n;
    Peak best;
    for (int k = 1; k <= max_cycles; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double v = y[i] - icpt - slope * static_cast<double>(i);
            const double a = 2.0 * std::numbers::pi * k * static_cast<double>(i) / n;
            re += v * std::cos(a);
            im += v * std::sin(a);
        }
        const double amp = 2.0 * std::hypot(re, im) / n;
        if (amp > best.amplitude) {
            best = {n * dt / k, amp};
        }
    }
    return best;
}

}  // namespace

Report phase_stability(const Config& c, std::uint64_t seed)
{
    const auto loaded = load_program(c.path("program"));
    const auto& program = loaded.program;
    const auto& constraint = find_constraint(program, c.text("constraint", ""));
    const long long reps = c.integer("repetitions", 10000);
    const double shot = c.quantity("shot_interval", Unit::time, 3.6);
    const double flat_limit = c.number("flat_tolerance", 1e-10);
    const double expected = c.quantity("expected_period", Unit::time, 360.0);
    const double period_tol = c.number("period_tolerance", 0.05);
    const Config d = c.section("drift");
    device::DriftParams drift;
    drift.sine_amplitude = d.quantity("amplitude", Unit::angle, drift.sine_amplitude);
    drift.period = d.quantity("period", Unit::time, drift.period);
    drift.ramp = d.number("ramp", drift.ramp);
    drift.walk_sigma = d.number("walk_sigma", drift.walk_sigma);
    drift.walk_step = d.quantity("walk_step", Unit::time, drift.walk_step);
    if (reps < 16 || !(shot > 0.0)) {
        throw ConfigError("phase-stability needs at least 16 repetitions and a positive shot interval");
    }

    std::vector<std::string> names;
    for (const auto& ch : program.channels) {
        names.push_back(ch.name);
    }
    const auto check = pulse::check_phase_coherence(program, constraint, pulse::PhaseModel::dds, 3);
    const double rep_seconds = static_cast<double>(check.period) / *program.clock;
    const double total = static_cast<double>(reps) * shot;
    const device::LoDrift lo_drift(drift, seed, names, total + shot);
    const pulse::LoNoise noise = [&](const std::string& ch, double seconds) {
        return lo_drift.phase(ch, seconds / rep_seconds * shot);
    };

    const auto analog = pulse::simulate_coherence(program, constraint, pulse::PhaseModel::analog_lo, reps, noise);
    const auto dds = pulse::simulate_coherence(program, constraint, pulse::PhaseModel::dds, reps);

    double dds_worst = 0.0;
    for (double v : dds.deviation) {
        dds_worst = std::max(dds_worst, std::abs(v));
    }
    const int max_cycles = static_cast<int>(std::min<long long>(reps / 4, 1000));
    const Peak peak = dominant_period(analog.deviation, shot, max_cycles);

    Report r;
    r.check("dds_reset_max_deviation_rad", dds_worst, Relation::less_equal, flat_limit);
    r.check("analog_period_relative_error", std::abs(peak.period - expected) / expected, Relation::less,
            period_tol);
    r.check("analog_oscillation_amplitude_rad", peak.amplitude, Relation::greater_equal, 100.0 * flat_limit);
    r.value("analog_dominant_period_s", peak.period);
    r.value("analog_variance_rad2", analog.variance);
    r.value("dds_variance_rad2", dds.variance);
    r.value("repetitions", static_cast<double>(reps));
    r.value("shot_interval_s", shot);

    io::CsvTable t{{"repetition", "wall_s", "analog_lo_rad", "dds_reset_rad"}, {}};
    for (std::size_t i = 0; i < analog.deviation.size(); ++i) {
        t.rows.push_back({static_cast<double>(i), static_cast<double>(i) * shot, analog.deviation[i],
                          dds.deviation[i]});
    }
    r.trace("phase_stability", std::move(t));
    return r;
}

}  // namespace rfqc::cli
