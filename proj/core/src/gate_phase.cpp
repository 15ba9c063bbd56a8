#include "rfqc/gate_phase.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "rfqc/errors.hpp"

namespace rfqc::cal {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double golden_max(const std::function<double(double)>& f, double a, double b)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 100 && b - a > 1e-12; ++i) {
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

// Argmax of f over `count` grid points starting at lo, refined between neighbours.
double grid_max(const std::function<double(double)>& f, double lo, double step, int count)
{
    int best = 0;
    double best_v = f(lo);
    for (int k = 1; k < count; ++k) {
        const double v = f(lo + step * k);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    const double x = lo + step * best;
    return golden_max(f, x - step, x + step);
}

device::GatePhases with_theta(device::GatePhases g, double theta)
{
    g.theta = theta;
    return g;
}

// P(00) of the companion sequence: start |+> on the probed qubit, `blocks` of Z * U with the
// other Z phase cancelling phi_11, Hadamard on the probed qubit.
double companion_population(const device::GatePhases& g, bool probe_a, double phi_deg, double phi_11, int blocks,
                            double theta)
{
    const double phi = phi_deg * kDeg;
    const double other = -phi_11 - phi;
    const device::Matrix4 z = probe_a ? device::z_phases(phi, other) : device::z_phases(other, phi);
    const device::Matrix4 block = z * device::bswap_unitary(with_theta(g, theta));
    const device::Matrix4 h = probe_a ? device::on_qubit_a(device::hadamard()) : device::on_qubit_b(device::hadamard());
    const device::State4 start = h * device::basis_state(0);
    const device::State4 psi = h * device::repeat_block(block, blocks, start);
    return std::norm(psi(0));
}

// Phase of the probed single-excitation state per block (phi_10 for qubit A, phi_01 for B).
double ladder_estimate(const device::GatePhases& g, bool probe_a, double phi_11, const GatePhaseOptions& o)
{
    double estimate = 0.0;
    bool first = true;
    for (int length : o.ladder) {
        if (length < 1) {
            throw DomainError("companion sequence lengths must be positive");
        }
        const auto pop = [&](double deg) { return companion_population(g, probe_a, deg, phi_11, length, o.theta); };
        // The sweep variable psi = phi + phi_single satisfies L psi = m pi at the optimum,
        // with m = L / 4 for lengths that are multiples of 4 and m = 0 otherwise.
        const double m = length % 4 == 0 ? static_cast<double>(length / 4) : 0.0;
        const double offset = 180.0 * m / length;
        const double period = 360.0 / length;
        double phi_opt = 0.0;
        if (first) {
            phi_opt = grid_max(pop, 0.0, period / 360.0, 360);
        } else {
            const double predicted = offset - estimate;
            phi_opt = grid_max(pop, predicted - period / 2.0, period / 360.0, 361);
        }
        double candidate = offset - phi_opt;
        if (!first) {
            candidate += period * std::round((estimate - candidate) / period);
        }
        estimate = candidate;
        first = false;
    }
    return estimate;
}

}  // namespace

double wrap_deg(double deg)
{
    const double w = std::fmod(deg, 360.0);
    return w < 0.0 ? w + 360.0 : (w >= 360.0 ? 0.0 : w);
}

double gate_sweep_population(const device::GatePhases& g, double phi_a_deg, const GatePhaseOptions& o)
{
    const device::Matrix4 block = device::z_phases(phi_a_deg * kDeg, 0.0) * device::bswap_unitary(with_theta(g, o.theta));
    return device::populations(device::repeat_block(block, o.blocks, device::basis_state(0)))(3);
}

GatePhaseResult calibrate_gate_phase(const device::GatePhases& truth, const GatePhaseOptions& o)
{
    if (o.blocks < 2 || o.blocks % 4 != 2) {
        throw DomainError("gate-phase sweep needs 4n + 2 blocks");
    }
    if (o.ladder.empty()) {
        throw DomainError("companion ladder is empty");
    }
    GatePhaseResult r;
    const auto pop = [&](double deg) { return gate_sweep_population(truth, deg, o); };
    for (int k = 0; k < 360; ++k) {
        r.sweep_deg.push_back(k);
        r.sweep_population.push_back(pop(k));
    }
    const auto [lo, hi] = std::minmax_element(r.sweep_population.begin(), r.sweep_population.end());
    if (*hi - *lo < o.flat_threshold) {
        throw FitError("gate-phase sweep is flat: error amplification failed");
    }
    const double coarse = static_cast<double>(hi - r.sweep_population.begin());
    const double opt = golden_max(pop, coarse - 1.0, coarse + 1.0);
    r.phi_a_deg = wrap_deg(opt);
    r.peak_population = pop(opt);
    r.phi_11_deg = wrap_deg(-opt);

    const double h = 1e-3;
    for (double d = -o.sensitivity_window; d <= o.sensitivity_window; d += 0.05) {
        const double slope = (pop(opt + d + h) - pop(opt + d - h)) / (2.0 * h);
        r.sensitivity = std::max(r.sensitivity, std::abs(slope));
    }

    const double phi_11 = -opt * kDeg;
    r.phi_10_deg = wrap_deg(ladder_estimate(truth, true, phi_11, o));
    r.phi_01_deg = wrap_deg(ladder_estimate(truth, false, phi_11, o));
    r.phi_zz_deg = wrap_deg(r.phi_11_deg - r.phi_01_deg - r.phi_10_deg);
    return r;
}

}  // namespace rfqc::cal
