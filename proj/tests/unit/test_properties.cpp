#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/dsp_properties.hpp"
#include "rfqc/crosstalk.hpp"
#include "rfqc/errors.hpp"
#include "rfqc/mux_plan.hpp"
#include "rfqc/parametric.hpp"
#include "rfqc/predistort.hpp"
#include "rfqc/pulse_parser.hpp"
#include "rfqc/transfer_function.hpp"

using namespace rfqc;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t integer(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

pulse::Statement random_statement(std::mt19937_64& rng, const pulse::Program& p, int depth)
{
    pulse::Statement s;
    const auto& ch = p.channels[static_cast<std::size_t>(integer(rng, 0, static_cast<std::int64_t>(p.channels.size()) - 1))];
    const auto pick_at = [&]() -> std::optional<std::int64_t> {
        if (integer(rng, 0, 1) == 0) {
            return std::nullopt;
        }
        return integer(rng, 0, 100000);
    };
    switch (integer(rng, 0, depth < 2 ? 8 : 7)) {
    case 0:
        s.op = pulse::Op::set_freq;
        s.targets = {ch.name};
        s.value = uniform(rng, -2e9, 2e9);
        break;
    case 1:
        s.op = pulse::Op::set_phase;
        s.targets = {ch.name};
        s.value = uniform(rng, -7.0, 7.0);
        break;
    case 2:
        s.op = pulse::Op::set_gain;
        s.targets = {ch.name};
        s.value = uniform(rng, -1.0, 1.0);
        break;
    case 3:
        s.op = pulse::Op::play;
        s.targets = {ch.name};
        s.operand = p.envelopes[static_cast<std::size_t>(integer(rng, 0, static_cast<std::int64_t>(p.envelopes.size()) - 1))].name;
        s.at = pick_at();
        break;
    case 4:
        s.op = pulse::Op::trigger;
        s.targets = {p.readouts.front().name};
        s.amount = integer(rng, 0, 1) == 0 ? 0 : integer(rng, 1, 5000);
        s.at = pick_at();
        break;
    case 5:
        s.op = pulse::Op::phase_reset;
        if (integer(rng, 0, 1) == 1) {
            s.targets = {ch.name};
        }
        s.at = pick_at();
        break;
    case 6:
        s.op = pulse::Op::wait;
        s.amount = integer(rng, 0, 100000);
        break;
    case 7:
        s.op = pulse::Op::sync;
        break;
    default:
        s.op = pulse::Op::repeat;
        s.amount = integer(rng, 1, 1000);
        if (integer(rng, 0, 1) == 1) {
            s.period = integer(rng, 1, 1000000);
        }
        for (std::int64_t k = integer(rng, 0, 4); k > 0; --k) {
            s.body.push_back(random_statement(rng, p, depth + 1));
        }
        break;
    }
    return s;
}

pulse::Program random_program(std::mt19937_64& rng)
{
    pulse::Program p;
    if (integer(rng, 0, 1) == 1) {
        p.clock = uniform(rng, 1e9, 1e10);
    }
    const auto n_channels = integer(rng, 2, 4);
    for (std::int64_t k = 0; k < n_channels; ++k) {
        pulse::ChannelDecl c;
        c.name = "ch" + std::to_string(k);
        c.freq = uniform(rng, 0.0, 3e9);
        if (integer(rng, 0, 2) == 0) {
            c.lo = uniform(rng, 1e9, 8e9);
        }
        p.channels.push_back(c);
    }
    if (integer(rng, 0, 1) == 1) {
        pulse::ChannelDecl m;
        m.name = "mux";
        for (std::int64_t k = integer(rng, 1, 4); k > 0; --k) {
            m.mux_tones.push_back(uniform(rng, -800e6, 800e6));
        }
        p.channels.push_back(m);
    }
    const auto n_env = integer(rng, 1, 3);
    for (std::int64_t k = 0; k < n_env; ++k) {
        pulse::EnvelopeDecl e;
        e.name = "env" + std::to_string(k);
        e.length = integer(rng, 1, 300);
        e.amplitude = uniform(rng, 0.01, 1.0);
        e.interpolated = integer(rng, 0, 3) == 0;
        switch (integer(rng, 0, 4)) {
        case 0:
            e.shape = dsp::EnvelopeShape::gaussian;
            e.sigma = uniform(rng, 1.0, 40.0);
            break;
        case 1:
            e.shape = dsp::EnvelopeShape::drag;
            e.sigma = uniform(rng, 1.0, 40.0);
            e.alpha = uniform(rng, -1.0, 1.0);
            break;
        case 2: e.shape = dsp::EnvelopeShape::triangle; break;
        case 3: e.shape = dsp::EnvelopeShape::flat; break;
        default:
            e.shape = dsp::EnvelopeShape::user;
            e.amplitude = 1.0;
            e.values.resize(static_cast<std::size_t>(integer(rng, 1, 20)));
            for (auto& v : e.values) {
                v = uniform(rng, -1.0, 1.0);
            }
            e.length = static_cast<std::int64_t>(e.values.size());
            break;
        }
        p.envelopes.push_back(e);
    }
    p.readouts.push_back({"ro", uniform(rng, -1e9, 1e9), integer(rng, 1, 4096), {}});
    pulse::CoherenceConstraint c;
    c.name = "combo";
    for (std::int64_t k = 0; k < n_channels; ++k) {
        const int mags[] = {-2, -1, 1, 2};
        c.terms.push_back({"ch" + std::to_string(k), mags[integer(rng, 0, 3)]});
    }
    p.constraints.push_back(c);
    for (std::int64_t k = integer(rng, 0, 12); k > 0; --k) {
        p.body.push_back(random_statement(rng, p, 0));
    }
    return p;
}

}  // namespace

TEST(Property, GapCoherenceIsExact)
{
    const auto r = rfqc::testing::gap_coherence(1, 200);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Property, MuxIsLinear)
{
    const auto r = rfqc::testing::mux_linearity(2, 200);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Property, PfbConservesEnergy)
{
    const auto r = rfqc::testing::pfb_energy(3, 200);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Property, InterpolationOfSlowContent)
{
    const auto r = rfqc::testing::interpolation(4, 100);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Property, PrintThenParseIsIdentity)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_program(rng);
        const std::string text = pulse::print(p);
        const auto r = pulse::parse(text);
        ASSERT_TRUE(r.ok()) << text << (r.diagnostics.empty() ? "" : pulse::to_json_line(r.diagnostics[0]));
        ASSERT_EQ(*r.program, p) << text;
        ASSERT_EQ(pulse::print(*r.program), text);
    }
}

TEST(Property, PredistortionRoundTrip)
{
    std::mt19937_64 rng(6);
    const double rate = 6.88e9;
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = device::random_transfer_function(rng, rate);
        std::vector<double> target(2000);
        double level = 0.0;
        for (auto& v : target) {
            if (integer(rng, 0, 99) == 0) {
                level = uniform(rng, -1.0, 1.0);
            }
            v = level;
        }
        const auto y = device::apply_channel(cal::predistort(h, target, rate), h, rate);
        for (std::size_t n = 0; n < y.size(); ++n) {
            ASSERT_LT(std::abs(y[n] - target[n]), 1e-4) << trial;
        }
    }
}

TEST(Property, ProjectionIsIdempotentAndShrinks)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const device::Bloch b{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const double g = uniform(rng, -7, 7);
        const double c = uniform(rng, -7, 7);
        const auto once = device::parametric_project(b, g, c);
        const auto twice = device::parametric_project(once, g, c);
        for (int k = 0; k < 3; ++k) {
            ASSERT_NEAR(once[static_cast<std::size_t>(k)], twice[static_cast<std::size_t>(k)], 1e-15);
        }
        ASSERT_LE(device::norm(once), device::norm(b) + 1e-15);
        ASSERT_EQ(once[2], 0.0);
    }
}

TEST(Property, ChevronIsBoundedAndSymmetric)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = device::scenario_with_shift(uniform(rng, 0.5e6, 10e6), uniform(rng, 0.01, 0.25),
                                             uniform(rng, -3.0, 3.0));
        s.rabi_rate = uniform(rng, 0.5e6, 5e6);
        device::Compensation c;
        c.amplitude = {uniform(rng, 0.0, 0.3), uniform(rng, 0.0, 0.3)};
        c.phase = {uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
        const double centre = device::chevron_centre(s, c);
        const double d = uniform(rng, 0.0, 20e6);
        const double t = uniform(rng, 0.0, 1e-6);
        const double up = device::chevron_population(s, c, centre + d, t);
        const double down = device::chevron_population(s, c, centre - d, t);
        ASSERT_GE(up, 0.0);
        ASSERT_LE(up, 1.0);
        ASSERT_NEAR(up, down, 1e-9);
    }
}

TEST(Property, FoundPlansValidate)
{
    std::mt19937_64 rng(9);
    cal::PlanSearch s;
    s.lo_min = 4e9;
    s.lo_max = 9e9;
    s.lo_step = 100e6;
    s.mix_step = 20e6;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> r;
        for (auto k = integer(rng, 1, 4); k > 0; --k) {
            r.push_back(std::round(uniform(rng, 5e9, 8e9) / 1e6) * 1e6);
        }
        try {
            const auto plan = cal::plan_mux(r, s);
            const auto check = cal::validate_plan(plan, r, s);
            ASSERT_TRUE(check.ok) << trial << ": " << (check.violations.empty() ? "" : check.violations[0]);
        } catch (const InfeasibleError&) {
        }
    }
}
