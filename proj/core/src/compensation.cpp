#include "rfqc/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "rfqc/errors.hpp"
#include "rfqc/lorentzian.hpp"

namespace rfqc::cal {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Maximize f on [a, b] by golden-section search.
double golden_max(const std::function<double(double)>& f, double a, double b, int iterations = 80)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iterations && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

// Grid search followed by golden-section refinement between the neighbours of the best point.
double grid_then_golden(const std::function<double(double)>& f, double lo, double step, int count)
{
    int best = 0;
    double best_v = f(lo);
    for (int k = 1; k < count; ++k) {
        const double v = f(lo + k * step);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    const double x = lo + best * step;
    const double refined = golden_max(f, x - step, x + step);
    return f(refined) >= best_v ? refined : x;
}

}  // namespace

double CompensationResult::phase_deg(int line) const
{
    const double d = settings.phase.at(static_cast<std::size_t>(line)) / kDeg;
    const double w = std::fmod(d, 360.0);
    return w < 0.0 ? w + 360.0 : w;
}

double measured_contrast(const device::CrosstalkScenario& s, const device::Compensation& c, double f_drive,
                         const CompensationOptions& o)
{
    const auto pop = [&](double t) { return device::chevron_population(s, c, f_drive, t); };
    const int count = static_cast<int>(std::floor(o.max_length / o.length_step)) + 1;
    const double t = grid_then_golden(pop, 0.0, o.length_step, count);
    return pop(t);
}

double measured_centre(const device::CrosstalkScenario& s, const device::Compensation& c,
                       const CompensationOptions& o)
{
    std::vector<double> freqs(static_cast<std::size_t>(o.chevron_points));
    std::vector<double> contrast(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double u = static_cast<double>(k) / static_cast<double>(freqs.size() - 1);
        freqs[k] = s.bare_sum() - o.chevron_span + 2.0 * o.chevron_span * u;
        contrast[k] = measured_contrast(s, c, freqs[k], o);
    }
    return fit_lorentzian(freqs, contrast).center;
}

CompensationResult calibrate_compensation(const device::CrosstalkScenario& s, const CompensationOptions& o)
{
    s.validate();
    if (o.rounds < 1 || !(o.amplitude_step > 0.0) || !(o.max_amplitude > 0.0) || !(o.length_step > 0.0)) {
        throw DomainError("compensation sweep settings are out of range");
    }
    const double f0 = s.bare_sum();
    CompensationResult r;
    device::Compensation comp;
    r.contrast_before = measured_contrast(s, comp, f0, o);
    r.centre_before = measured_centre(s, comp, o);
    if (r.contrast_before >= 1.0 - 1e-12) {
        r.notes.push_back("contrast landscape is flat: no crosstalk to cancel");
        r.settings = comp;
        r.contrast_after = r.contrast_before;
        r.centre_after = r.centre_before;
        return r;
    }

    const int amp_count = static_cast<int>(std::floor(o.max_amplitude / o.amplitude_step)) + 1;
    for (int round = 0; round < o.rounds; ++round) {
        for (std::size_t line = 0; line < 2; ++line) {
            // Phase at a probe amplitude when the line is still (nearly) off.
            device::Compensation trial = comp;
            trial.amplitude[line] = std::max(comp.amplitude[line], o.probe_amplitude);
            const auto by_phase = [&](double phi) {
                device::Compensation t = trial;
                t.phase[line] = phi;
                return measured_contrast(s, t, f0, o);
            };
            const double flat_lo = std::min(by_phase(0.0), by_phase(std::numbers::pi));
            const double flat_hi = std::max(by_phase(0.0), by_phase(std::numbers::pi));
            const double best_phase = grid_then_golden(by_phase, 0.0, kDeg, 360);
            if (by_phase(best_phase) - flat_lo > 1e-12 || flat_hi - flat_lo > 1e-12) {
                comp.phase[line] = best_phase;
            }

            const auto by_amp = [&](double a) {
                device::Compensation t = comp;
                t.amplitude[line] = std::clamp(a, 0.0, o.max_amplitude);
                return measured_contrast(s, t, f0, o);
            };
            comp.amplitude[line] = std::clamp(grid_then_golden(by_amp, 0.0, o.amplitude_step, amp_count), 0.0,
                                              o.max_amplitude);
        }
    }
    for (std::size_t line = 0; line < 2; ++line) {
        if (comp.amplitude[line] < 1e-9) {
            comp.amplitude[line] = 0.0;
            comp.phase[line] = 0.0;
        }
    }
    r.settings = comp;
    r.contrast_after = measured_contrast(s, comp, f0, o);
    r.centre_after = measured_centre(s, comp, o);
    return r;
}

}  // namespace rfqc::cal
