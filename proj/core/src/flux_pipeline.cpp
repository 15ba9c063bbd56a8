#include "rfqc/flux_pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "rfqc/errors.hpp"
#include "rfqc/lorentzian.hpp"
#include "rfqc/predistort.hpp"

namespace rfqc::cal {

namespace {

std::size_t samples(double duration, double rate)
{
    return static_cast<std::size_t>(std::llround(duration * rate));
}

// Ramsey-derived detuning for the first `n` samples of `flux`.
DetuningTrace measure_ramsey(const device::FluxQubit& q, const std::vector<double>& flux, std::size_t n,
                             double rate)
{
    const std::span<const double> head(flux.data(), n);
    const auto x = population_to_quadrature(device::ramsey_trace(q, head, rate, device::Axis::X));
    const auto y = population_to_quadrature(device::ramsey_trace(q, head, rate, device::Axis::Y));
    return extract_detuning(x, y, 1.0 / rate);
}

ExpFitOptions terms(int n)
{
    ExpFitOptions o;
    o.n_terms = n;
    return o;
}

}  // namespace

void FluxPipelineConfig::validate() const
{
    if (!(rate > 0.0) || !(ramsey_window > 0.0) || !(spectroscopy_start > 0.0) ||
        !(spectroscopy_stop > spectroscopy_start) || spectroscopy_points < 8 || probe_points < 5) {
        throw DomainError("flux calibration timing and point counts are out of range");
    }
    if (qubit.detuning(step_amplitude) == 0.0) {
        throw DomainError("the flux step does not detune the qubit");
    }
}

FluxPipelineResult run_flux_pipeline(const device::TransferFunction& line, const FluxPipelineConfig& c)
{
    c.validate();
    line.validate();
    const double target = c.qubit.detuning(c.step_amplitude);
    const double window = c.probe.truncation * c.probe.sigma;
    const std::size_t total = samples(c.spectroscopy_stop + window, c.rate) + 2;
    const std::size_t n_ramsey = std::max<std::size_t>(samples(c.ramsey_window, c.rate), 3);

    const std::vector<double> step(total, c.step_amplitude);
    const auto flux = device::apply_channel(step, line, c.rate);

    FluxPipelineResult r;

    // Short time: Ramsey quadratures.
    r.ramsey = measure_ramsey(c.qubit, flux, n_ramsey, c.rate);
    for (std::size_t i = 0; i < n_ramsey; ++i) {
        const double ratio = r.ramsey.delta[i] / target;
        if (r.ramsey.valid[i] && ratio > 0.0) {
            r.ramsey_t.push_back(r.ramsey.t[i]);
            r.ramsey_step.push_back(std::sqrt(ratio));
        }
    }

    // Long time: spectroscopy at log-spaced delays.
    const double gamma = device::probe_linewidth(c.probe);
    const double deepest = 9.0 * target;  // response up to three times the step
    const double f_lo = c.qubit.f_sweet + std::min(0.0, deepest) - 3.0 * gamma;
    const double f_hi = c.qubit.f_sweet + std::max(0.0, deepest) + 3.0 * gamma;
    std::vector<double> probe_freqs(static_cast<std::size_t>(c.probe_points));
    for (std::size_t k = 0; k < probe_freqs.size(); ++k) {
        probe_freqs[k] = f_lo + (f_hi - f_lo) * static_cast<double>(k) / static_cast<double>(probe_freqs.size() - 1);
    }
    std::vector<double> pops(probe_freqs.size());
    for (int k = 0; k < c.spectroscopy_points; ++k) {
        const double f = static_cast<double>(k) / (c.spectroscopy_points - 1);
        const double delay = c.spectroscopy_start * std::pow(c.spectroscopy_stop / c.spectroscopy_start, f);
        for (std::size_t j = 0; j < probe_freqs.size(); ++j) {
            pops[j] = device::spectroscopy_population(c.qubit, flux, c.rate, delay, probe_freqs[j], c.probe);
        }
        const auto fit = fit_lorentzian(probe_freqs, pops);
        const double ratio = (fit.center - c.qubit.f_sweet) / target;
        if (ratio > 0.0) {
            r.spec_t.push_back(delay);
            r.spec_step.push_back(std::sqrt(ratio));
        }
    }

    // Two terms from each scale, then a joint refinement.
    r.short_fit = fit_exponentials(r.ramsey_t, r.ramsey_step, terms(2));
    r.long_fit = fit_exponentials(r.spec_t, r.spec_step, terms(2));

    std::vector<double> t = r.ramsey_t;
    std::vector<double> y = r.ramsey_step;
    std::vector<double> w(t.size(), 1.0);
    const double spec_weight = static_cast<double>(r.ramsey_t.size()) / static_cast<double>(r.spec_t.size());
    t.insert(t.end(), r.spec_t.begin(), r.spec_t.end());
    y.insert(y.end(), r.spec_step.begin(), r.spec_step.end());
    w.resize(t.size(), spec_weight);
    std::vector<double> seeds;
    for (const auto* fit : {&r.short_fit, &r.long_fit}) {
        for (const auto& term : fit->terms) {
            const bool distinct = std::none_of(seeds.begin(), seeds.end(),
                                               [&](double tau) { return std::abs(std::log(tau / term.tau)) < 0.1; });
            if (distinct && term.tau > 1.0 / c.rate) {
                seeds.push_back(term.tau);
            }
        }
    }
    // Every term count is tried; the seeded start joins the log-spaced ones when it fits.
    for (int n = 1; n <= 4; ++n) {
        ExpFitOptions o = terms(n);
        o.weights = w;
        o.starts = 12;
        if (seeds.size() == static_cast<std::size_t>(n)) {
            o.initial_taus = seeds;
        }
        auto fit = fit_exponentials(t, y, o);
        if (n == 1 || fit.residual_norm < r.joint_fit.residual_norm) {
            r.joint_fit = std::move(fit);
        }
        // Subsets of the pooled seeds, for when one scale duplicates a term of the other.
        if (seeds.size() > static_cast<std::size_t>(n)) {
            std::vector<bool> pick(seeds.size(), false);
            std::fill(pick.begin(), pick.begin() + n, true);
            do {
                ExpFitOptions so = terms(n);
                so.weights = w;
                so.starts = 0;
                for (std::size_t k = 0; k < seeds.size(); ++k) {
                    if (pick[k]) {
                        so.initial_taus.push_back(seeds[k]);
                    }
                }
                auto sub = fit_exponentials(t, y, so);
                if (sub.residual_norm < r.joint_fit.residual_norm) {
                    r.joint_fit = std::move(sub);
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    }

    // Closed loop.
    const std::vector<double> unit(total, 1.0);
    r.predistorted = predistort(r.joint_fit, unit, c.rate);
    r.closed_loop = device::apply_channel(r.predistorted, line, c.rate);
    const std::size_t settle = samples(c.settle_time, c.rate);
    const std::size_t approach = samples(c.approach_time, c.rate);
    for (std::size_t n = 0; n < total; ++n) {
        const double v = r.closed_loop[n];
        if (n >= settle) {
            r.settle_error = std::max(r.settle_error, std::abs(v - 1.0));
        }
        if (n >= approach) {
            r.approach_error = std::max(r.approach_error, std::abs(v * v - 1.0));
        }
    }
    std::vector<double> drive(r.closed_loop);
    for (double& v : drive) {
        v *= c.step_amplitude;
    }
    const auto again = measure_ramsey(c.qubit, drive, n_ramsey, c.rate);
    for (std::size_t n = settle; n < n_ramsey; ++n) {
        const double ratio = again.delta[n] / target;
        if (again.valid[n] && ratio > 0.0) {
            r.remeasured_error = std::max(r.remeasured_error, std::abs(std::sqrt(ratio) - 1.0));
        }
    }
    r.pass = r.settle_error < c.settle_tolerance && r.approach_error < c.approach_tolerance;
    return r;
}

}  // namespace rfqc::cal
