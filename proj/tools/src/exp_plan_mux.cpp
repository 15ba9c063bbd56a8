#include "rfqc/cli/experiments.hpp"
#include "rfqc/mux_plan.hpp"

namespace rfqc::cli {

namespace {

io::CsvTable plan_table(const cal::FrequencyPlan& p, const std::vector<double>& resonators)
{
    io::CsvTable t{{"tone", "resonator_hz", "f_mix_hz", "offset_hz", "synthesized_hz", "lo_hz", "sideband", "bin"},
                   {}};
    for (std::size_t i = 0; i < resonators.size(); ++i) {
        t.rows.push_back({static_cast<double>(i), resonators[i], p.f_mix, p.offsets[i], p.f_mix + p.offsets[i], p.lo,
                          static_cast<double>(p.sidebands[i]), p.bins.empty() ? -1.0 : static_cast<double>(p.bins[i])});
    }
    return t;
}

}  // namespace

Report plan_mux(const Config& c, std::uint64_t)
{
    const auto resonators = c.quantities("resonators", Unit::frequency);
    cal::PlanSearch s;
    s.f_dac = c.quantity("f_dac", Unit::frequency, s.f_dac);
    s.f_adc = c.quantity("f_adc", Unit::frequency, s.f_adc);
    const Config g = c.section("search");
    s.lo_min = g.quantity("lo_min", Unit::frequency, s.lo_min);
    s.lo_max = g.quantity("lo_max", Unit::frequency, s.lo_max);
    s.lo_step = g.quantity("lo_step", Unit::frequency, s.lo_step);
    s.mix_step = g.quantity("mix_step", Unit::frequency, s.mix_step);
    s.guard_fraction = g.number("guard_fraction", s.guard_fraction);

    Report r;
    if (c.has("validate")) {
        const Config v = c.section("validate");
        cal::FrequencyPlan given;
        given.f_mix = v.quantity("f_mix", Unit::frequency);
        given.lo = v.quantity("lo", Unit::frequency, 0.0);
        given.offsets = v.quantities("offsets", Unit::frequency);
        for (long long sb : v.integers("sidebands", std::vector<long long>(given.offsets.size(), 1))) {
            given.sidebands.push_back(static_cast<int>(sb));
        }
        for (long long b : v.integers("bins", {})) {
            given.bins.push_back(static_cast<int>(b));
        }
        cal::PlanCheck check;
        try {
            check = cal::validate_plan(given, resonators, s);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        r.check("given_plan_valid", check.ok ? 1.0 : 0.0, Relation::equal, 1.0);
        r.value("given_plan_slack_hz", check.slack);
        for (const auto& msg : check.violations) {
            r.notes.push_back("given plan: " + msg);
        }
        if (given.bins.empty()) {
            given.bins = check.bins;
        }
        if (given.offsets.size() == resonators.size() && given.sidebands.size() == resonators.size() &&
            given.bins.size() == resonators.size()) {
            r.trace("given_plan", plan_table(given, resonators));
        }
    }

    cal::FrequencyPlan found;
    try {
        found = cal::plan_mux(resonators, s);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const auto recheck = cal::validate_plan(found, resonators, s);
    r.check("found_plan_valid", recheck.ok ? 1.0 : 0.0, Relation::equal, 1.0);
    r.value("found_f_mix_hz", found.f_mix);
    r.value("found_lo_hz", found.lo);
    r.value("found_slack_hz", found.slack);
    r.notes.push_back("tightest constraint of the found plan: " + recheck.tightest);
    r.trace("plan", plan_table(found, resonators));
    return r;
}

}  // namespace rfqc::cli
