#include <cmath>
#include <numbers>
#include <random>

#include "rfqc/cli/experiments.hpp"
#include "rfqc/gate_phase.hpp"

namespace rfqc::cli {

namespace {

constexpr double kRad = std::numbers::pi / 180.0;

double angle_error(double a_deg, double b_deg)
{
    const double d = cal::wrap_deg(a_deg - b_deg);
    return std::min(d, 360.0 - d);
}

}  // namespace

Report gate_phase(const Config& c, std::uint64_t seed)
{
    const Config g = c.section("phases");
    device::GatePhases truth;
    truth.phi_d = g.quantity("phi_d", Unit::angle, 0.0);
    truth.phi_01 = g.quantity("phi_01", Unit::angle, 1.0 * kRad);
    truth.phi_10 = g.quantity("phi_10", Unit::angle, 2.0 * kRad);
    truth.phi_zz = g.quantity("phi_zz", Unit::angle, 0.0);
    cal::GatePhaseOptions o;
    o.blocks = static_cast<int>(c.integer("blocks", o.blocks));
    o.theta = c.quantity("theta", Unit::angle, o.theta);
    if (c.has("ladder")) {
        o.ladder.clear();
        for (long long v : c.integers("ladder", {})) {
            o.ladder.push_back(static_cast<int>(v));
        }
    }
    const double expected = c.quantity("expected_phi_a", Unit::angle, 357.0 * kRad) / kRad;
    const double tol = c.quantity("tolerance", Unit::angle, 0.5 * kRad) / kRad;
    const double min_sensitivity = c.number("min_sensitivity", 0.1);
    const long long trials = c.integer("random_trials", 100);

    cal::GatePhaseResult res;
    try {
        res = cal::calibrate_gate_phase(truth, o);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    Report r;
    r.check("phi_a_error_deg", angle_error(res.phi_a_deg, expected), Relation::less_equal, tol);
    r.check("sensitivity_per_deg", res.sensitivity, Relation::greater_equal, min_sensitivity);
    r.value("phi_a_deg", res.phi_a_deg);
    r.value("phi_11_deg", res.phi_11_deg);
    r.value("phi_01_deg", res.phi_01_deg);
    r.value("phi_10_deg", res.phi_10_deg);
    r.value("phi_zz_deg", res.phi_zz_deg);
    r.value("peak_population", res.peak_population);

    io::CsvTable sweep{{"phi_a_deg", "population_11"}, {}};
    for (std::size_t k = 0; k < res.sweep_deg.size(); ++k) {
        sweep.rows.push_back({res.sweep_deg[k], res.sweep_population[k]});
    }
    r.trace("sweep", std::move(sweep));

    if (trials > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 360.0);
        io::CsvTable rt{{"trial", "true_phi_11_deg", "measured_phi_11_deg", "error_deg"}, {}};
        double worst = 0.0;
        for (long long i = 0; i < trials; ++i) {
            device::GatePhases t;
            t.phi_d = u(rng) * kRad;
            t.phi_01 = u(rng) * kRad;
            t.phi_10 = u(rng) * kRad;
            t.phi_zz = u(rng) * kRad;
            const auto m = cal::calibrate_gate_phase(t, o);
            const double truth_deg = cal::wrap_deg(t.phi_11() / kRad);
            const double err = angle_error(m.phi_11_deg, truth_deg);
            worst = std::max(worst, err);
            rt.rows.push_back({static_cast<double>(i), truth_deg, m.phi_11_deg, err});
        }
        r.check("random_trials_worst_error_deg", worst, Relation::less_equal, tol);
        r.trace("random_trials", std::move(rt));
    }
    return r;
}

}  // namespace rfqc::cli
