#include <fftw3.h>
#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "rfqc/crosstalk.hpp"
#include "rfqc/drift.hpp"
#include "rfqc/errors.hpp"
#include "rfqc/parametric.hpp"
#include "rfqc/qubit.hpp"
#include "rfqc/transfer_function.hpp"

using namespace rfqc;
using namespace rfqc::device;

namespace {

constexpr double kRate = 6.88e9;

// Linear convolution by FFT with the impulse response sampled from the closed-form step response.
std::vector<double> fft_convolve(const std::vector<double>& x, const TransferFunction& h, double rate)
{
    const std::size_t n = x.size();
    std::vector<double> g(n);
    g[0] = h.step_response(0.0);
    for (std::size_t k = 1; k < n; ++k) {
        g[k] = h.step_response(static_cast<double>(k) / rate) - h.step_response(static_cast<double>(k - 1) / rate);
    }
    const std::size_t m = 2 * n;
    std::vector<double> a(m, 0.0);
    std::vector<double> b(m, 0.0);
    std::copy(x.begin(), x.end(), a.begin());
    std::copy(g.begin(), g.end(), b.begin());
    const std::size_t bins = m / 2 + 1;
    std::vector<fftw_complex> fa(bins);
    std::vector<fftw_complex> fb(bins);
    const int len = static_cast<int>(m);
    fftw_plan pa = fftw_plan_dft_r2c_1d(len, a.data(), fa.data(), FFTW_ESTIMATE);
    fftw_plan pb = fftw_plan_dft_r2c_1d(len, b.data(), fb.data(), FFTW_ESTIMATE);
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = fa[k][0] * fb[k][0] - fa[k][1] * fb[k][1];
        const double im = fa[k][0] * fb[k][1] + fa[k][1] * fb[k][0];
        fa[k][0] = re;
        fa[k][1] = im;
    }
    std::vector<double> y(m);
    fftw_plan pi = fftw_plan_dft_c2r_1d(len, fa.data(), y.data(), FFTW_ESTIMATE);
    fftw_execute(pi);
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pi);
    y.resize(n);
    for (auto& v : y) {
        v /= static_cast<double>(m);
    }
    return y;
}

// Weak Gaussian probe on a two-level system with time-dependent qubit frequency, integrated as a
// product of exact 2x2 step propagators in the frame of the probe.
double probe_response(const std::function<double(double)>& f_qubit, double f_probe, double sigma)
{
    const double dt = 0.05e-9;
    const double area = 0.05;  // rad, weak drive
    const double omega0 = area / (std::sqrt(kTwoPi) * sigma);
    Eigen::Vector2cd psi(1.0, 0.0);
    for (double t = -4.0 * sigma; t < 4.0 * sigma; t += dt) {
        const double tm = t + 0.5 * dt;
        const double delta = kTwoPi * (f_qubit(tm) - f_probe);
        const double omega = omega0 * std::exp(-0.5 * tm * tm / (sigma * sigma));
        // H = (delta / 2) sz + (omega / 2) sx
        const double r = 0.5 * std::hypot(delta, omega);
        Eigen::Matrix2cd u;
        const double c = std::cos(r * dt);
        const double s = r > 0.0 ? std::sin(r * dt) / r : dt;
        const Complex i{0.0, 1.0};
        u << c - i * s * 0.5 * delta, -i * s * 0.5 * omega, -i * s * 0.5 * omega, c + i * s * 0.5 * delta;
        psi = u * psi;
    }
    return std::norm(psi(1));
}

}  // namespace

TEST(Channel, IdentityLeavesInputUnchanged)
{
    const std::vector<double> x{0.0, 1.0, -0.5, 0.25, 3.0};
    EXPECT_EQ(apply_channel(x, TransferFunction{}, kRate), x);
}

TEST(Channel, SingleTermStepClosedForm)
{
    const TransferFunction h{{{-0.2, 100e-9}}};
    const std::size_t n = 4000;
    const std::vector<double> step(n, 1.0);
    const auto y = apply_channel(step, h, kRate);
    for (double t : {0.0, 100e-9, 500e-9}) {
        const auto k = static_cast<std::size_t>(std::llround(t * kRate));
        const double tk = static_cast<double>(k) / kRate;
        EXPECT_NEAR(y[k], 1.0 - 0.2 * std::exp(-tk / 100e-9), 1e-12) << t;
    }
}

TEST(Channel, RecursionMatchesFftConvolution)
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const auto h = random_transfer_function(rng, kRate);
        std::vector<double> x(100000);
        for (auto& v : x) {
            v = noise(rng);
        }
        const auto fast = apply_channel(x, h, kRate);
        const auto slow = fft_convolve(x, h, kRate);
        double err = 0.0;
        double ref = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            err = std::max(err, std::abs(fast[k] - slow[k]));
            ref = std::max(ref, std::abs(slow[k]));
        }
        EXPECT_LT(err / ref, 1e-9) << trial;
    }
}

TEST(Channel, ComplexAndWaveformOverloadsAgree)
{
    const TransferFunction h{{{0.3, 5e-9}, {-0.1, 80e-9}}};
    std::vector<Complex> x(500);
    std::vector<double> re(500);
    std::vector<double> im(500);
    for (std::size_t k = 0; k < x.size(); ++k) {
        re[k] = std::sin(0.01 * static_cast<double>(k));
        im[k] = std::cos(0.03 * static_cast<double>(k));
        x[k] = {re[k], im[k]};
    }
    const auto y = apply_channel(x, h, kRate);
    const auto yr = apply_channel(re, h, kRate);
    const auto yi = apply_channel(im, h, kRate);
    for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_NEAR(y[k].real(), yr[k], 1e-14);
        EXPECT_NEAR(y[k].imag(), yi[k], 1e-14);
    }
    const ComplexWaveform w{x, SampleClock(kRate), 0};
    EXPECT_EQ(apply_channel(w, h).samples, y);
}

TEST(Channel, ValidationAndInversion)
{
    EXPECT_THROW((TransferFunction{{{0.1, 0.0}}}.validate()), DomainError);
    EXPECT_THROW((TransferFunction{{{std::nan(""), 1e-9}}}.validate()), DomainError);
    const TransferFunction dead{{{-1.0, 1e-6}}};
    EXPECT_THROW(invert_channel(std::vector<double>(10, 1.0), dead, kRate), DomainError);
    const TransferFunction h{{{-0.3, 20e-9}, {0.1, 2e-6}}};
    EXPECT_TRUE(is_minimum_phase(h, kRate));
    const std::vector<double> y(2000, 1.0);
    const auto x = invert_channel(y, h, kRate);
    const auto back = apply_channel(x, h, kRate);
    for (std::size_t k = 0; k < y.size(); ++k) {
        EXPECT_NEAR(back[k], 1.0, 1e-12);
    }
}

TEST(Qubit, FrequencyMap)
{
    const FluxQubit q{5e9, 2e9, 0.2};
    const std::vector<double> zero(8, 0.0);
    for (double f : qubit_freq(q, zero)) {
        EXPECT_EQ(f, 5e9);
    }
    const std::vector<double> x(4, 0.5);
    for (double f : qubit_freq(q, x)) {
        EXPECT_DOUBLE_EQ(f - 5e9, -2e9 * 0.01);
    }
    // Sweet spot: symmetric in flux, so first order insensitive.
    EXPECT_DOUBLE_EQ(q.frequency(0.01), q.frequency(-0.01));
}

TEST(Qubit, DistortedStepComposesChannelAndQuadraticMap)
{
    const FluxQubit q;
    const TransferFunction h{{{-0.15, 10e-9}, {0.05, 1e-6}}};
    const std::vector<double> step(100000, 0.8);
    const auto y = apply_channel(step, h, kRate);
    const auto f = qubit_freq(q, y);
    const double target = q.detuning(0.8);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double phi = q.flux_gain * y[k];
        EXPECT_DOUBLE_EQ(f[k], q.f_sweet - q.curvature * phi * phi);
    }
    EXPECT_LT(std::abs((f.back() - q.f_sweet) - target), std::abs((f[100] - q.f_sweet) - target));
    EXPECT_NEAR((f.back() - q.f_sweet) / target, 1.0, 1e-3);
}

TEST(Ramsey, NoDetuning)
{
    const FluxQubit q;
    const std::vector<double> zero(10, 0.0);
    EXPECT_NEAR(ramsey_population(q, zero, kRate, 10, Axis::X), 1.0, 1e-15);
    EXPECT_NEAR(ramsey_population(q, zero, kRate, 10, Axis::Y), 0.5, 1e-15);
    EXPECT_THROW(ramsey_population(q, zero, kRate, 11, Axis::X), DomainError);
}

TEST(Ramsey, ConstantDetuningPhaseSlope)
{
    const FluxQubit q;
    const std::vector<double> flux(400, 0.3);
    const double delta0 = q.detuning(0.3);
    const auto px = ramsey_trace(q, flux, kRate, Axis::X);
    const auto py = ramsey_trace(q, flux, kRate, Axis::Y);
    std::vector<double> phase(px.size());
    for (std::size_t k = 0; k < px.size(); ++k) {
        const double x = 2.0 * px[k] - 1.0;
        const double y = 2.0 * py[k] - 1.0;
        EXPECT_NEAR(x * x + y * y, 1.0, 1e-12);
        phase[k] = std::atan2(y, x);
    }
    for (std::size_t k = 1; k < phase.size(); ++k) {
        double d = phase[k] - phase[k - 1];
        d = std::remainder(d, kTwoPi);
        EXPECT_NEAR(d * kRate / (kTwoPi * delta0), 1.0, 1e-6) << k;
    }
}

TEST(Spectroscopy, OnResonanceAndFarDetuned)
{
    const FluxQubit q;
    const std::vector<double> zero(1000, 0.0);
    const Probe probe;
    EXPECT_NEAR(spectroscopy_population(q, zero, kRate, 50e-9, q.f_sweet, probe), probe.peak, 1e-15);
    EXPECT_LT(spectroscopy_population(q, zero, kRate, 50e-9, q.f_sweet + 2e9, probe), 1e-3);
    EXPECT_NEAR(probe_linewidth(probe), std::sqrt(std::numbers::ln2) / (kTwoPi * 7e-9), 1e-6);
}

TEST(Spectroscopy, DriftingQubitCentreIsWindowAverage)
{
    // Flux settling through the probe window: the qubit moves by tens of MHz during the pulse.
    const FluxQubit q{5e9, 2e9, 0.2};
    const TransferFunction h{{{-0.4, 15e-9}}};
    const std::vector<double> step(4000, 0.5);
    const auto flux = apply_channel(step, h, kRate);
    const double delay = 25e-9;
    const Probe probe;

    const double model = probed_frequency(q, flux, kRate, delay, probe);
    const auto f_at = [&](double t) {
        const double u = (delay + t) * kRate;
        const auto k = static_cast<std::size_t>(std::clamp(u, 0.0, static_cast<double>(flux.size() - 2)));
        const double frac = u - static_cast<double>(k);
        return q.frequency(flux[k] + frac * (flux[k + 1] - flux[k]));
    };
    double best_f = 0.0;
    double best_p = -1.0;
    for (double df = -60e6; df <= 60e6; df += 0.25e6) {
        const double p = probe_response(f_at, model + df, probe.sigma);
        if (p > best_p) {
            best_p = p;
            best_f = model + df;
        }
    }
    EXPECT_LT(std::abs(best_f - model), probe_linewidth(probe) / 10.0);
    EXPECT_GT(std::abs(f_at(-20e-9) - f_at(20e-9)), 5e6);
}

TEST(Parametric, IswapReadout)
{
    EXPECT_DOUBLE_EQ(iswap_readout_phase(0.0, 0.0, 0.0), -1.0);
    EXPECT_NEAR(iswap_readout_phase(0.5, 1.0, 1.5 - std::numbers::pi / 2.0), 0.0, 1e-15);
    EXPECT_NEAR(iswap_readout_phase(std::numbers::pi, 0.2, 0.2), 1.0, 1e-15);
}

TEST(Parametric, ProjectionExamples)
{
    const Bloch x{1.0, 0.0, 0.0};
    const auto px = parametric_project(x, 0.0, 0.0);
    EXPECT_NEAR(px[0], 1.0, 1e-15);
    EXPECT_NEAR(norm(px), 1.0, 1e-15);
    const auto py = parametric_project({0.0, 1.0, 0.0}, 0.0, 0.0);
    EXPECT_NEAR(norm(py), 0.0, 1e-15);
    const auto pz = parametric_project({0.0, 0.0, 1.0}, 0.3, 1.0);
    EXPECT_NEAR(norm(pz), 0.0, 1e-15);
}

TEST(Parametric, ContrastCurveFollowsTheAxis)
{
    const double phig = 0.7;
    for (int k = 0; k < 360; ++k) {
        const double phic = k * std::numbers::pi / 180.0;
        const double phim = 0.5 * (phig - phic);
        // Explicit projection onto (cos phim, -sin phim, 0).
        const double dot = std::cos(phim);
        const Bloch oracle{dot * std::cos(phim), -dot * std::sin(phim), 0.0};
        const auto got = parametric_project({1.0, 0.0, 0.0}, phig, phic);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(got[static_cast<std::size_t>(i)], oracle[static_cast<std::size_t>(i)], 1e-15);
        }
        EXPECT_NEAR(norm(got), std::abs(std::cos((phig - phic) / 2.0)), 1e-15);
    }
    const ParametricScenario s;
    EXPECT_DOUBLE_EQ(s.pump_frequency(), s.f2 - s.f1);
}

TEST(Crosstalk, ChevronCentres)
{
    const CrosstalkScenario bare;
    EXPECT_DOUBLE_EQ(chevron_centre(bare, {}), 110.2e6);

    const auto shifted = scenario_with_shift(7e6);
    EXPECT_NEAR(chevron_centre(shifted, {}), 103.2e6, 1e-3);

    Compensation c;
    c.amplitude[0] = 0.25;
    c.phase[0] = std::numbers::pi;
    const auto r = residual_drive(shifted, c);
    EXPECT_NEAR(std::abs(r[0]), 0.0, 1e-15);
    EXPECT_NEAR(chevron_centre(shifted, c), 110.2e6, 1e-6);
}

TEST(Crosstalk, ChevronGridAndLimits)
{
    const auto s = scenario_with_shift(7e6);
    const std::vector<double> f{100e6, 103.2e6, 106e6};
    const std::vector<double> t{0.0, 125e-9, 250e-9};
    const auto g = chevron_map(s, {}, f, t);
    ASSERT_EQ(g.values.size(), 9u);
    EXPECT_NEAR(g.at(1, 2), 1.0, 1e-9);  // pi pulse on resonance at 2 MHz Rabi rate
    EXPECT_EQ(g.at(0, 0), 0.0);
    EXPECT_NEAR(rabi_contrast(s, {}, 103.2e6), 1.0, 1e-12);

    CrosstalkScenario bad;
    bad.a_into_b = 0.3;
    EXPECT_THROW(bad.validate(), DomainError);
    EXPECT_THROW(scenario_with_shift(7e6, 0.0), DomainError);
}

TEST(Drift, ReproducibleFromSeed)
{
    const std::vector<std::string> ch{"q1", "q2"};
    const LoDrift a(DriftParams{}, 7, ch, 3600.0);
    const LoDrift b(DriftParams{}, 7, ch, 3600.0);
    const LoDrift c(DriftParams{}, 8, ch, 3600.0);
    for (double t : {0.0, 10.5, 1000.0, 3599.0}) {
        EXPECT_EQ(a.phase("q1", t), b.phase("q1", t));
        EXPECT_EQ(a.phase("q2", t), b.phase("q2", t));
    }
    EXPECT_NE(a.phase("q1", 100.0), c.phase("q1", 100.0));
    EXPECT_EQ(a.phase("other", 100.0), 0.0);
}

TEST(Drift, SinusoidHasTheConfiguredPeriod)
{
    DriftParams p;
    p.ramp = 0.0;
    p.walk_sigma = 0.0;
    const LoDrift d(p, 1, {"lo"}, 7200.0);
    for (double t : {0.0, 17.0, 100.0, 1000.0}) {
        EXPECT_NEAR(d.phase("lo", t), d.phase("lo", t + 360.0), 1e-12);
    }
    double lo = 1e9;
    double hi = -1e9;
    for (int t = 0; t < 360; ++t) {
        lo = std::min(lo, d.phase("lo", t));
        hi = std::max(hi, d.phase("lo", t));
    }
    EXPECT_NEAR(hi - lo, 2.0 * p.sine_amplitude, 2.0 * p.sine_amplitude * 1e-3);
    EXPECT_THROW(LoDrift(DriftParams{0.3, 0.0, 0.0, 0.0, 1.0}, 1, {"lo"}, 10.0), DomainError);
}
