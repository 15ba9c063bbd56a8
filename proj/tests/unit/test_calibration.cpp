#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfqc/compensation.hpp"
#include "rfqc/crosstalk.hpp"
#include "rfqc/dds.hpp"
#include "rfqc/errors.hpp"

using namespace rfqc;
using namespace rfqc::cal;

namespace {

double phase_error_deg(double got_deg, double want_deg)
{
    return std::abs(std::remainder(got_deg - want_deg, 360.0));
}

}  // namespace

TEST(Compensation, SevenMegahertzShiftIsCancelled)
{
    const auto s = device::scenario_with_shift(7e6);
    const device::Compensation none;
    EXPECT_NEAR(device::chevron_centre(s, none), 110.2e6 - 7e6, 1.0);
    EXPECT_NEAR(measured_centre(s, none), 103.2e6, 0.05e6);

    const auto r = calibrate_compensation(s);
    EXPECT_NEAR(r.centre_before, 103.2e6, 0.05e6);
    EXPECT_NEAR(r.centre_after, 110.2e6, 0.05e6);
    EXPECT_LT(phase_error_deg(r.phase_deg(0), 180.0), 2.0);
    EXPECT_NEAR(r.settings.amplitude[0], 0.25, 0.01);
    EXPECT_GT(r.contrast_after, r.contrast_before);
    EXPECT_NEAR(r.contrast_after, 1.0, 1e-3);
}

TEST(Compensation, DrivePhaseShiftsTheAnswer)
{
    const auto s = device::scenario_with_shift(5e6, 0.2, std::numbers::pi / 3.0);
    const auto r = calibrate_compensation(s);
    EXPECT_LT(phase_error_deg(r.phase_deg(0), 240.0), 2.0);
    EXPECT_NEAR(r.centre_after, s.bare_sum(), 0.05e6);
}

TEST(Compensation, NoCrosstalkLeavesLinesOff)
{
    device::CrosstalkScenario s;
    s.stark_coeff = 1e8;
    const auto r = calibrate_compensation(s);
    EXPECT_EQ(r.settings.amplitude[0], 0.0);
    EXPECT_EQ(r.settings.amplitude[1], 0.0);
    EXPECT_FALSE(r.notes.empty());
    EXPECT_NEAR(r.centre_after, s.bare_sum(), 0.05e6);
}

TEST(Compensation, MeasuredContrastPeaksOnResonance)
{
    const auto s = device::scenario_with_shift(3e6);
    const device::Compensation none;
    const double centre = device::chevron_centre(s, none);
    EXPECT_NEAR(measured_contrast(s, none, centre), 1.0, 1e-3);
    EXPECT_NEAR(measured_contrast(s, none, centre + 2e6), device::rabi_contrast(s, none, centre + 2e6), 1e-3);
}

TEST(Compensation, RandomScenarios)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> shift(1e6, 10e6);
    std::uniform_real_distribution<double> leak(0.05, 0.25);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int seed = 0; seed < 100; ++seed) {
        const double p = phase(rng);
        const auto s = device::scenario_with_shift(shift(rng), leak(rng), p);
        const auto r = calibrate_compensation(s);
        EXPECT_NEAR(r.centre_after, s.bare_sum(), 0.05e6) << seed;
        const double want = std::fmod(p * 180.0 / std::numbers::pi + 180.0, 360.0);
        EXPECT_LT(phase_error_deg(r.phase_deg(0), want), 2.0) << seed;
    }
}

TEST(Compensation, PhaseDegIsWrapped)
{
    CompensationResult r;
    r.settings.phase = {-std::numbers::pi / 2.0, 7.0 * std::numbers::pi};
    EXPECT_NEAR(r.phase_deg(0), 270.0, 1e-12);
    EXPECT_NEAR(r.phase_deg(1), 180.0, 1e-9);
    EXPECT_THROW(r.phase_deg(2), std::out_of_range);
}
