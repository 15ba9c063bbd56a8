#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rfqc/errors.hpp"
#include "rfqc/gate_phase.hpp"
#include "rfqc/gates.hpp"

using namespace rfqc;
using namespace rfqc::device;
using Complex = std::complex<double>;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

GatePhases sqrt_bswap(double phi_d = 0.0, double p01 = 0.0, double p10 = 0.0, double pzz = 0.0)
{
    return GatePhases{std::numbers::pi / 4.0, phi_d, p01, p10, pzz};
}

double max_abs(const Eigen::MatrixXcd& m)
{
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Bswap, ZeroAngleIsIdentity)
{
    EXPECT_LT(max_abs(bswap_unitary(GatePhases{}) - Matrix4::Identity()), 1e-15);
}

TEST(Bswap, HalfPiSwapsGroundToDoublyExcited)
{
    const GatePhases g{std::numbers::pi / 2.0, 0.0, 0.0, 0.0, 0.0};
    const State4 out = bswap_unitary(g) * basis_state(0);
    EXPECT_LT(std::abs(out(3) - Complex(0.0, 1.0)), 1e-15);
    EXPECT_LT(std::abs(out(0)), 1e-15);
}

TEST(Bswap, MatrixEntries)
{
    const GatePhases g{0.3, 0.4, 0.5, 0.6, 0.7};
    const Matrix4 u = bswap_unitary(g);
    const Complex i{0.0, 1.0};
    EXPECT_LT(std::abs(u(0, 0) - std::cos(0.3)), 1e-15);
    EXPECT_LT(std::abs(u(0, 3) - i * std::exp(i * 0.4) * std::sin(0.3)), 1e-15);
    EXPECT_LT(std::abs(u(1, 1) - std::exp(i * 0.5)), 1e-15);
    EXPECT_LT(std::abs(u(2, 2) - std::exp(i * 0.6)), 1e-15);
    EXPECT_LT(std::abs(u(3, 0) - i * std::exp(i * (g.phi_11() - 0.4)) * std::sin(0.3)), 1e-15);
    EXPECT_LT(std::abs(u(3, 3) - std::exp(i * g.phi_11()) * std::cos(0.3)), 1e-15);
    EXPECT_DOUBLE_EQ(g.phi_11(), 0.5 + 0.6 + 0.7);
}

TEST(Bswap, RandomPhasesAreUnitary)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 200; ++k) {
        const GatePhases g{u(rng), u(rng), u(rng), u(rng), u(rng)};
        const Matrix4 m = bswap_unitary(g);
        EXPECT_LT(max_abs(m * m.adjoint() - Matrix4::Identity()), 1e-12);
    }
}

TEST(Bswap, FourGatesRestorePopulations)
{
    const Matrix4 u = bswap_unitary(sqrt_bswap());
    const Matrix4 u4 = u * u * u * u;
    for (int b = 0; b < 4; ++b) {
        const auto p = populations(u4 * basis_state(b));
        EXPECT_NEAR(p(b), 1.0, 1e-14);
    }
}

TEST(Sequence, CorrectedPairTransfersFully)
{
    const auto g = sqrt_bswap(0.9, 0.2, 0.5, -0.3);
    const double phi_a = -g.phi_11() / 2.0 + 0.4;
    const double phi_b = -g.phi_11() - phi_a;
    const Matrix4 u = bswap_unitary(g);
    const std::vector<Matrix4> ops{u, z_phases(phi_a, phi_b), u};
    const auto p = populations(run_gate_sequence(ops, basis_state(0)));
    EXPECT_NEAR(p(3), 1.0, 1e-14);

    // Without the correction the transfer is incomplete.
    const std::vector<Matrix4> bare{u, u};
    EXPECT_LT(populations(run_gate_sequence(bare, basis_state(0)))(3), 0.99);
    EXPECT_THROW(run_gate_sequence(std::vector<Matrix4>{}, basis_state(0)), DomainError);
}

TEST(Sequence, BellState)
{
    const State4 psi = bswap_unitary(sqrt_bswap()) * basis_state(0);
    State4 target = State4::Zero();
    target(0) = 1.0 / std::numbers::sqrt2;
    target(3) = Complex(0.0, 1.0 / std::numbers::sqrt2);
    EXPECT_GE(state_fidelity(target, psi), 1.0 - 1e-10);
    EXPECT_GE(purity(psi), 1.0 - 1e-10);
}

TEST(Sequence, RepeatBlockMatchesExplicitProduct)
{
    const Matrix4 block = z_phases(0.1, 0.2) * bswap_unitary(sqrt_bswap(0.3, 0.4, 0.5, 0.6));
    Matrix4 acc = Matrix4::Identity();
    for (int k = 0; k < 7; ++k) {
        acc = block * acc;
    }
    const State4 start = on_qubit_a(hadamard()) * basis_state(0);
    EXPECT_LT((repeat_block(block, 7, start) - acc * start).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Sequence, SingleQubitLifts)
{
    const State4 plus_a = on_qubit_a(hadamard()) * basis_state(0);
    EXPECT_NEAR(populations(plus_a)(0), 0.5, 1e-15);
    EXPECT_NEAR(populations(plus_a)(2), 0.5, 1e-15);
    const State4 plus_b = on_qubit_b(hadamard()) * basis_state(0);
    EXPECT_NEAR(populations(plus_b)(1), 0.5, 1e-15);
}

TEST(GatePhase, ReferenceSweepOptimum)
{
    const auto truth = sqrt_bswap(0.0, 1.0 * kDeg, 2.0 * kDeg, 0.0);
    const auto r = cal::calibrate_gate_phase(truth);
    EXPECT_NEAR(r.phi_a_deg, 357.0, 0.5);
    EXPECT_GE(r.sensitivity, 0.1);
    EXPECT_NEAR(r.peak_population, 1.0, 1e-9);
    EXPECT_EQ(r.sweep_deg.size(), 360u);
    // Within ten degrees of the optimum some one degree step moves the population by ten percent.
    double step = 0.0;
    for (double d = -10.0; d <= 10.0; d += 0.25) {
        step = std::max(step, std::abs(cal::gate_sweep_population(truth, r.phi_a_deg + d + 0.5) -
                                       cal::gate_sweep_population(truth, r.phi_a_deg + d - 0.5)));
    }
    EXPECT_GE(step, 0.1);
}

TEST(GatePhase, ZeroPhasesGiveZero)
{
    const auto r = cal::calibrate_gate_phase(sqrt_bswap());
    const double d = std::min(r.phi_a_deg, 360.0 - r.phi_a_deg);
    EXPECT_LT(d, 1e-4);
}

TEST(GatePhase, RandomTruthsAreRecovered)
{
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (int seed = 0; seed < 100; ++seed) {
        const auto truth = sqrt_bswap(u(rng), u(rng), u(rng), u(rng));
        const auto r = cal::calibrate_gate_phase(truth);
        const double err = std::abs(std::remainder(r.phi_11_deg - truth.phi_11() / kDeg, 360.0));
        EXPECT_LT(err, 0.5) << seed;
        const double e01 = std::abs(std::remainder(r.phi_01_deg - truth.phi_01 / kDeg, 360.0));
        const double e10 = std::abs(std::remainder(r.phi_10_deg - truth.phi_10 / kDeg, 360.0));
        EXPECT_LT(e01, 0.5) << seed;
        EXPECT_LT(e10, 0.5) << seed;
    }
}

TEST(GatePhase, BadBlockCountAndFlatSweep)
{
    cal::GatePhaseOptions o;
    o.blocks = 400;
    EXPECT_THROW(cal::calibrate_gate_phase(sqrt_bswap(), o), DomainError);
    cal::GatePhaseOptions flat;
    flat.theta = 0.0;
    EXPECT_THROW(cal::calibrate_gate_phase(sqrt_bswap(), flat), FitError);
    EXPECT_DOUBLE_EQ(cal::wrap_deg(-3.0), 357.0);
    EXPECT_DOUBLE_EQ(cal::wrap_deg(720.0), 0.0);
}
