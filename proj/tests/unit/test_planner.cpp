#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rfqc/errors.hpp"
#include "rfqc/mux_plan.hpp"

using namespace rfqc;
using namespace rfqc::cal;

namespace {

const std::vector<double> kResonators{6805e6, 5791e6, 7697e6, 6966e6};

PlanSearch wide_search()
{
    PlanSearch s;
    s.lo_min = 3e9;
    s.lo_max = 10e9;
    return s;
}

FrequencyPlan reference_plan()
{
    FrequencyPlan p;
    p.f_mix = 950e6;
    p.lo = 5925e6;
    p.offsets = {-70e6, -816e6, 822e6, 91e6};
    p.sidebands = {1, -1, 1, 1};
    p.bins = {5, 0, 4, 6};
    return p;
}

}  // namespace

TEST(Planner, ReferencePlanValidates)
{
    const auto c = validate_plan(reference_plan(), kResonators, PlanSearch{});
    EXPECT_TRUE(c.ok) << (c.violations.empty() ? "" : c.violations.front());
    EXPECT_EQ(c.bins, (std::vector<int>{5, 0, 4, 6}));
    EXPECT_GT(c.slack, 0.0);
}

TEST(Planner, BrokenPlansAreRejected)
{
    auto wrong_bins = reference_plan();
    wrong_bins.bins = {5, 0, 4, 7};
    EXPECT_FALSE(validate_plan(wrong_bins, kResonators, PlanSearch{}).ok);

    auto wide_offset = reference_plan();
    wide_offset.offsets[1] = -900e6;
    EXPECT_FALSE(validate_plan(wide_offset, kResonators, PlanSearch{}).ok);

    auto wrong_lo = reference_plan();
    wrong_lo.lo = 5930e6;
    const auto c = validate_plan(wrong_lo, kResonators, PlanSearch{});
    EXPECT_FALSE(c.ok);
    EXPECT_FALSE(c.violations.empty());
}

TEST(Planner, FoundPlanValidates)
{
    const auto plan = plan_mux(kResonators, wide_search());
    const auto c = validate_plan(plan, kResonators, wide_search());
    EXPECT_TRUE(c.ok) << (c.violations.empty() ? "" : c.violations.front());
    EXPECT_GT(plan.lo, 0.0);
    EXPECT_GT(plan.slack, 0.0);
    EXPECT_GE(c.slack, plan.slack - 1.0);
}

TEST(Planner, SingleResonatorNeedsNoMixer)
{
    const std::vector<double> one{900e6};
    const auto plan = plan_mux(one, wide_search());
    EXPECT_EQ(plan.lo, 0.0);
    EXPECT_EQ(plan.sidebands, std::vector<int>{1});
    EXPECT_TRUE(validate_plan(plan, one, wide_search()).ok);
}

TEST(Planner, CloseResonatorsAreInfeasible)
{
    const std::vector<double> pair{6000e6, 6010e6};
    try {
        plan_mux(pair, wide_search());
        FAIL() << "expected an infeasible plan";
    } catch (const InfeasibleError& e) {
        EXPECT_NE(std::string(e.what()).find("constraint"), std::string::npos);
    }
}

TEST(Planner, ResonatorCountLimits)
{
    EXPECT_THROW(plan_mux(std::vector<double>{}, wide_search()), DomainError);
    EXPECT_THROW(plan_mux(std::vector<double>{5e9, 5.3e9, 5.6e9, 5.9e9, 6.2e9}, wide_search()), DomainError);
}

TEST(Planner, RandomFoundPlansAreSound)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> f(4e9, 8e9);
    PlanSearch s = wide_search();
    s.lo_step = 50e6;
    s.mix_step = 10e6;
    int found = 0;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> r;
        const int n = 1 + k % 4;
        for (int i = 0; i < n; ++i) {
            r.push_back(std::round(f(rng) / 1e6) * 1e6);
        }
        try {
            const auto plan = plan_mux(r, s);
            ++found;
            EXPECT_TRUE(validate_plan(plan, r, s).ok) << k;
        } catch (const InfeasibleError&) {
        }
    }
    EXPECT_GT(found, 0);
}
