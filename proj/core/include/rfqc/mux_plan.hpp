#pragma once

#include <span>
#include <string>
#include <vector>

namespace rfqc::cal {

/// Mux generator settings that reach every resonator through one optional external mixer.
/// Tone i is synthesized at f_mix + offsets[i] and lands at lo + sidebands[i] * (f_mix + offsets[i]).
/// With lo = 0 no mixer is used and every sideband is +1.
struct FrequencyPlan {
    double f_mix = 0.0;  ///< Hz
    double lo = 0.0;     ///< Hz; 0 means no mixer
    std::vector<double> offsets;
    std::vector<int> sidebands;
    std::vector<int> bins;
    double slack = 0.0;  ///< smallest constraint margin, Hz
};

struct PlanSearch {
    double f_dac = 6881.28e6;
    double f_adc = 2457.6e6;
    double lo_min = 0.0;  ///< LO grid; lo = 0 is always tried
    double lo_max = 0.0;
    double lo_step = 5e6;
    double mix_step = 1e6;
    double guard_fraction = 0.1;  ///< keep folded tones this fraction of a bin away from bin edges
};

/// Outcome of checking a plan against the hard constraints.
struct PlanCheck {
    bool ok = false;
    std::vector<std::string> violations;
    double slack = 0.0;
    std::string tightest;  ///< constraint with the smallest margin
    std::vector<int> bins;  ///< bins of the folded tones
};

/// Hard constraints: each offset in (-f_dac/8, f_dac/8); each synthesized tone in (0, f_dac];
/// the mixer maps every tone onto its resonator; folded tones sit in pairwise distinct f_adc/16
/// bins. Bins in the plan, when given, must match.
PlanCheck validate_plan(const FrequencyPlan& plan, std::span<const double> resonators, const PlanSearch& search);

/// Exhaustive search. A plan without a mixer is preferred whenever one exists; otherwise the plan
/// with the largest slack wins, ties going to the lower LO and then the lower f_mix. Bins must
/// also clear the guard band. Throws DomainError for an empty list or more than 4 resonators and
/// InfeasibleError naming the tightest violated constraint.
FrequencyPlan plan_mux(std::span<const double> resonators, const PlanSearch& search);

}  // namespace rfqc::cal
