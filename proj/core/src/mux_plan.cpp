#include "rfqc/mux_plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfqc/errors.hpp"
#include "rfqc/nyquist.hpp"
#include "rfqc/readout.hpp"

namespace rfqc::cal {

namespace {

struct Margin {
    double value = std::numeric_limits<double>::infinity();
    std::string name;

    void update(double v, const std::string& what)
    {
        if (v < value) {
            value = v;
            name = what;
        }
    }
};

std::string tone_label(std::size_t i)
{
    return "tone " + std::to_string(i);
}

// Bin margins of the tones reaching `resonators` through `lo`: distance to the nearest bin edge
// minus the guard, and a negative margin for every shared bin.
Margin bin_margin(std::span<const double> resonators, double lo, const PlanSearch& s, std::vector<int>* bins)
{
    Margin m;
    const double width = readout::bin_width(s.f_adc);
    const double guard = s.guard_fraction * width;
    std::vector<double> folded;
    std::vector<int> b;
    for (std::size_t i = 0; i < resonators.size(); ++i) {
        const double f = lo == 0.0 ? resonators[i] : std::abs(resonators[i] - lo);
        const double fold = dsp::fold_frequency(f, s.f_adc);
        const int bin = std::min(static_cast<int>(std::floor(fold / width)), 7);
        const double edge = std::min(fold - bin * width, (bin + 1) * width - fold);
        m.update(edge - guard, tone_label(i) + " bin-edge guard");
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == bin) {
                m.update(std::abs(fold - folded[j]) - width,
                         "bin collision between " + tone_label(j) + " and " + tone_label(i));
            }
        }
        folded.push_back(fold);
        b.push_back(bin);
    }
    if (bins != nullptr) {
        *bins = std::move(b);
    }
    return m;
}

// Offset and synthesis-range margins of a candidate.
Margin tone_margin(std::span<const double> ifs, double f_mix, const PlanSearch& s)
{
    Margin m;
    for (std::size_t i = 0; i < ifs.size(); ++i) {
        const double off = ifs[i] - f_mix;
        m.update(s.f_dac / 8.0 - std::abs(off), tone_label(i) + " offset range");
        m.update(ifs[i], tone_label(i) + " positive synthesis");
        m.update(s.f_dac - ifs[i], tone_label(i) + " DAC range");
    }
    return m;
}

void check_search(std::span<const double> resonators, const PlanSearch& s)
{
    if (resonators.empty() || resonators.size() > static_cast<std::size_t>(readout::kMaxSimultaneousReadouts)) {
        throw DomainError("plan needs 1 to 4 resonators");
    }
    if (!(s.f_dac > 0.0) || !(s.f_adc > 0.0) || !(s.lo_step > 0.0) || !(s.mix_step > 0.0) ||
        !(s.lo_max >= s.lo_min) || !(s.lo_min >= 0.0) || !(s.guard_fraction >= 0.0 && s.guard_fraction < 0.5)) {
        throw DomainError("plan search settings are out of range");
    }
}

}  // namespace

PlanCheck validate_plan(const FrequencyPlan& plan, std::span<const double> resonators, const PlanSearch& s)
{
    check_search(resonators, s);
    PlanCheck c;
    const std::size_t n = resonators.size();
    if (plan.offsets.size() != n || plan.sidebands.size() != n) {
        c.violations.push_back("plan lists a different number of tones than resonators");
        return c;
    }
    Margin m;
    std::vector<double> ifs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int sb = plan.sidebands[i];
        const double synth = plan.f_mix + plan.offsets[i];
        ifs[i] = synth;
        if (sb != 1 && sb != -1) {
            c.violations.push_back(tone_label(i) + " sideband must be +1 or -1");
            continue;
        }
        if (plan.lo == 0.0 && sb != 1) {
            c.violations.push_back(tone_label(i) + " has a lower sideband without a mixer");
        }
        const double reached = plan.lo + sb * synth;
        if (std::abs(reached - resonators[i]) > 1e-3) {
            std::ostringstream msg;
            msg << tone_label(i) << " reaches " << reached << " Hz instead of " << resonators[i] << " Hz";
            c.violations.push_back(msg.str());
        }
    }
    const Margin tones = tone_margin(ifs, plan.f_mix, s);
    m.update(tones.value, tones.name);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(plan.offsets[i]) < s.f_dac / 8.0)) {
            c.violations.push_back(tone_label(i) + " offset outside (-f_dac/8, f_dac/8)");
        }
        if (!(ifs[i] > 0.0 && ifs[i] <= s.f_dac)) {
            c.violations.push_back(tone_label(i) + " synthesized frequency outside (0, f_dac]");
        }
    }
    PlanSearch hard = s;
    hard.guard_fraction = 0.0;
    std::vector<int> bins;
    const Margin b = bin_margin(ifs, 0.0, hard, &bins);
    m.update(b.value, b.name);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (bins[i] == bins[j]) {
                c.violations.push_back("bin collision between " + tone_label(j) + " and " + tone_label(i));
            }
        }
    }
    if (!plan.bins.empty() && plan.bins != bins) {
        c.violations.push_back("plan bins differ from the folded tone bins");
    }
    c.bins = bins;
    c.slack = m.value;
    c.tightest = m.name;
    c.ok = c.violations.empty();
    return c;
}

FrequencyPlan plan_mux(std::span<const double> resonators, const PlanSearch& s)
{
    check_search(resonators, s);
    const std::size_t n = resonators.size();

    std::vector<double> los{0.0};
    if (s.lo_max > 0.0) {
        const double first = std::ceil(std::max(s.lo_min, s.lo_step) / s.lo_step) * s.lo_step;
        for (double lo = first; lo <= s.lo_max + 1e-6; lo += s.lo_step) {
            los.push_back(lo);
        }
    }

    bool found = false;
    FrequencyPlan best;
    Margin nearest;  // least violated candidate when nothing is feasible
    nearest.value = -std::numeric_limits<double>::infinity();
    std::vector<double> ifs(n);
    const auto mix_count = static_cast<long>(std::floor(s.f_dac / s.mix_step));

    for (double lo : los) {
        if (found && best.lo == 0.0) {
            break;
        }
        std::vector<int> bins;
        const Margin b = bin_margin(resonators, lo, s, &bins);
        for (std::size_t i = 0; i < n; ++i) {
            ifs[i] = lo == 0.0 ? resonators[i] : std::abs(resonators[i] - lo);
        }
        if (b.value < 0.0) {
            if (b.value > nearest.value) {
                nearest = b;
            }
            continue;
        }
        for (long k = 1; k <= mix_count; ++k) {
            const double f_mix = static_cast<double>(k) * s.mix_step;
            Margin m = tone_margin(ifs, f_mix, s);
            if (m.value <= 0.0) {
                if (m.value > nearest.value) {
                    nearest = m;
                }
                continue;
            }
            const double slack = std::min(m.value, b.value);
            if (!found || slack > best.slack) {
                found = true;
                best.f_mix = f_mix;
                best.lo = lo;
                best.slack = slack;
                best.bins = bins;
            }
        }
    }
    if (!found) {
        std::ostringstream msg;
        msg << "no feasible plan on the grid; tightest violated constraint: " << nearest.name << " (margin "
            << nearest.value << " Hz)";
        throw InfeasibleError(msg.str());
    }
    best.offsets.resize(n);
    best.sidebands.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = best.lo == 0.0 ? resonators[i] : std::abs(resonators[i] - best.lo);
        best.sidebands[i] = best.lo == 0.0 || resonators[i] > best.lo ? 1 : -1;
        best.offsets[i] = f - best.f_mix;
    }
    return best;
}

}  // namespace rfqc::cal
