#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rfqc/cli/experiments.hpp"
#include "rfqc/flux_pipeline.hpp"

namespace rfqc::cli {

namespace {

cal::FluxPipelineConfig pipeline_config(const Config& c)
{
    cal::FluxPipelineConfig p;
    p.rate = c.quantity("rate", Unit::frequency, p.rate);
    const Config q = c.section("qubit");
    p.qubit.f_sweet = q.quantity("f_sweet", Unit::frequency, p.qubit.f_sweet);
    p.qubit.curvature = q.quantity("curvature", Unit::frequency, p.qubit.curvature);
    p.qubit.flux_gain = q.number("flux_gain", p.qubit.flux_gain);
    p.step_amplitude = c.number("step_amplitude", p.step_amplitude);
    p.ramsey_window = c.quantity("ramsey_window", Unit::time, p.ramsey_window);
    const Config s = c.section("spectroscopy");
    p.spectroscopy_points = static_cast<int>(s.integer("points", p.spectroscopy_points));
    p.spectroscopy_start = s.quantity("start", Unit::time, p.spectroscopy_start);
    p.spectroscopy_stop = s.quantity("stop", Unit::time, p.spectroscopy_stop);
    p.probe_points = static_cast<int>(s.integer("probe_points", p.probe_points));
    p.probe.sigma = s.quantity("sigma", Unit::time, p.probe.sigma);
    const Config settle = c.section("settle");
    p.settle_time = settle.quantity("time", Unit::time, p.settle_time);
    p.settle_tolerance = settle.number("tolerance", p.settle_tolerance);
    const Config approach = c.section("approach");
    p.approach_time = approach.quantity("time", Unit::time, p.approach_time);
    p.approach_tolerance = approach.number("tolerance", p.approach_tolerance);
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return p;
}

}  // namespace

Report predistort(const Config& c, std::uint64_t seed)
{
    const auto p = pipeline_config(c);
    const Config l = c.section("line");
    device::RandomLineSpec spec;
    spec.max_terms = static_cast<int>(l.integer("max_terms", spec.max_terms));
    spec.max_amplitude = l.number("max_amplitude", spec.max_amplitude);
    spec.tau_min = l.quantity("tau_min", Unit::time, spec.tau_min);
    spec.tau_max = l.quantity("tau_max", Unit::time, spec.tau_max);
    spec.min_step = l.number("min_step", spec.min_step);
    const long long trials = c.integer("trials", 100);
    const long long required = c.integer("required_passes", 99);
    if (trials < 1 || required > trials || spec.max_terms < 1 || spec.max_terms > 4) {
        throw ConfigError("predistort trial counts or line terms are out of range");
    }

    Report r;
    io::CsvTable runs{{"trial", "terms", "settle_error", "approach_error", "remeasured_error", "fit_terms",
                       "fit_residual", "pass"},
                      {}};
    long long passes = 0;
    double worst_settle = 0.0;
    double worst_approach = 0.0;
    double worst_remeasured = 0.0;
    for (long long i = 0; i < trials; ++i) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(sq);
        const auto line = device::random_transfer_function(rng, p.rate, spec);
        const auto res = cal::run_flux_pipeline(line, p);
        passes += res.pass ? 1 : 0;
        worst_settle = std::max(worst_settle, res.settle_error);
        worst_approach = std::max(worst_approach, res.approach_error);
        worst_remeasured = std::max(worst_remeasured, res.remeasured_error);
        runs.rows.push_back({static_cast<double>(i), static_cast<double>(line.terms.size()), res.settle_error,
                             res.approach_error, res.remeasured_error, static_cast<double>(res.joint_fit.n_terms),
                             res.joint_fit.residual_norm, res.pass ? 1.0 : 0.0});
        if (i == 0) {
            io::CsvTable fit{{"t", "measured", "fitted", "residual"}, {}};
            const auto add = [&](const std::vector<double>& t, const std::vector<double>& y) {
                for (std::size_t k = 0; k < t.size(); ++k) {
                    const double f = res.joint_fit.evaluate(t[k]);
                    fit.rows.push_back({t[k], y[k], f, y[k] - f});
                }
            };
            add(res.ramsey_t, res.ramsey_step);
            add(res.spec_t, res.spec_step);
            r.trace("fit_trial0", std::move(fit));

            io::CsvTable terms{{"source", "amplitude", "tau"}, {}};
            for (const auto& t : line.terms) {
                terms.rows.push_back({0.0, t.amplitude, t.tau});
            }
            for (const auto& t : res.joint_fit.terms) {
                terms.rows.push_back({1.0, t.amplitude, t.tau});
            }
            r.trace("terms_trial0", std::move(terms));

            const std::size_t n = std::min<std::size_t>(res.predistorted.size(), 4096);
            ComplexWaveform w{{}, SampleClock(p.rate), 0};
            io::CsvTable loop{{"t", "predistorted", "closed_loop"}, {}};
            for (std::size_t k = 0; k < n; ++k) {
                w.samples.emplace_back(res.predistorted[k], 0.0);
                loop.rows.push_back({static_cast<double>(k) / p.rate, res.predistorted[k], res.closed_loop[k]});
            }
            std::ostringstream wave;
            io::write_waveform_csv(wave, w);
            r.files.emplace_back("predistorted_trial0.csv", wave.str());
            r.trace("closed_loop_trial0", std::move(loop));
        }
    }
    r.check("passing_trials", static_cast<double>(passes), Relation::greater_equal, static_cast<double>(required));
    r.value("trials", static_cast<double>(trials));
    r.value("worst_settle_error", worst_settle);
    r.value("worst_approach_error", worst_approach);
    r.value("worst_remeasured_error", worst_remeasured);
    r.value("settle_tolerance", p.settle_tolerance);
    r.value("approach_tolerance", p.approach_tolerance);
    r.trace("trials", std::move(runs));
    return r;
}

}  // namespace rfqc::cli
