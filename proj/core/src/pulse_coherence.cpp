#include "rfqc/pulse_coherence.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "rfqc/dds.hpp"
#include "rfqc/errors.hpp"

namespace rfqc::pulse {

namespace {

struct Register {
    double freq = 0.0;
    double offset = 0.0;
    std::int64_t epoch = 0;
};

struct Setup {
    SampleClock clock{1.0};
    std::vector<const ChannelDecl*> channels;  // one per term
    std::vector<int> weight;                   // term coefficient in units of 1/scale
    int scale = 1;                             // 2 when a 1/2 coefficient is present
    long double lo_combination = 0;            // sum c_i f_L,i
};

Setup prepare(const Program& p, const CoherenceConstraint& c, PhaseModel model)
{
    if (!p.clock) {
        throw DomainError("coherence check needs a clock declaration");
    }
    if (c.terms.size() < 2) {
        throw DomainError("constraint '" + c.name + "' needs at least two terms");
    }
    Setup s{SampleClock(*p.clock), {}, {}, 1, 0};
    bool half = false;
    for (const auto& t : c.terms) {
        half = half || std::abs(t.half_units) == 1;
    }
    s.scale = half ? 2 : 1;
    for (const auto& t : c.terms) {
        const ChannelDecl* ch = p.find_channel(t.channel);
        if (!ch) {
            throw DomainError("constraint '" + c.name + "' references unknown channel '" + t.channel + "'");
        }
        if (!ch->mux_tones.empty()) {
            throw DomainError("constraint '" + c.name + "' references mux channel '" + t.channel + "'");
        }
        s.channels.push_back(ch);
        s.weight.push_back(half ? t.half_units : t.half_units / 2);
        if (model == PhaseModel::analog_lo) {
            s.lo_combination += static_cast<long double>(t.half_units) * ch->lo / 2;
        }
    }
    return s;
}

/// Register state of every channel at each repetition start, after that start's writes.
std::vector<std::map<std::string, Register>> registers_at_starts(const Program& p, const Schedule& sched)
{
    std::map<std::string, Register> regs;
    for (const auto& c : p.channels) {
        regs[c.name].freq = c.freq;
    }
    std::vector<std::map<std::string, Register>> out;
    const LoopInfo& loop = *sched.outer_loop;
    std::size_t k = 0;
    const auto& ins = sched.instructions;
    for (std::int64_t n = 0; n < loop.count; ++n) {
        const std::int64_t t = loop.rep_start(n);
        for (; k < ins.size() && ins[k].start <= t; ++k) {
            const auto& i = ins[k];
            switch (i.action) {
            case Action::set_freq: regs[i.channel].freq = i.value; break;
            case Action::set_phase: regs[i.channel].offset = i.value; break;
            case Action::phase_reset: regs[i.channel].epoch = i.start; break;
            default: break;
            }
        }
        out.push_back(regs);
    }
    return out;
}

Schedule schedule_reps(const Program& p, std::int64_t reps)
{
    ScheduleOptions opts;
    opts.outer_repeat_count = reps;
    Schedule s = schedule(p, opts);
    if (!s.outer_loop) {
        throw DomainError("program has no repeat block to check");
    }
    return s;
}

double dds_frequency(const ChannelDecl& ch, const Register& r, PhaseModel model)
{
    return model == PhaseModel::analog_lo ? r.freq - ch.lo : r.freq;
}

double lo_phase(const Setup& s, std::int64_t dt)
{
    return static_cast<double>(static_cast<long double>(kTwoPi) * s.lo_combination * dt /
                               static_cast<long double>(s.clock.rate()));
}

double variance(const std::vector<double>& x)
{
    if (x.empty()) {
        return 0.0;
    }
    long double mean = 0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<long double>(x.size());
    long double acc = 0;
    for (double v : x) {
        acc += (v - mean) * (v - mean);
    }
    return static_cast<double>(acc / static_cast<long double>(x.size()));
}

}  // namespace

CoherenceReport check_phase_coherence(const Program& p, const CoherenceConstraint& c, PhaseModel model,
                                      std::int64_t repetitions)
{
    const Setup s = prepare(p, c, model);
    if (repetitions < 1) {
        throw DomainError("repetition count must be positive");
    }
    // Three repetitions fix the steady-state registers and whether each epoch moves with t_N.
    const Schedule sched = schedule_reps(p, 3);
    const LoopInfo loop = *sched.outer_loop;
    const auto regs = registers_at_starts(p, sched);

    CoherenceReport rep;
    rep.period = loop.period;
    rep.repetitions = repetitions;
    rep.lo_combination = static_cast<double>(s.lo_combination);

    // Combination of phase words (units of 2 pi / 2^32, times `scale`) and of offsets.
    auto words = [&](std::int64_t n) {
        std::uint32_t v = 0;
        double off = 0.0;
        for (std::size_t i = 0; i < s.channels.size(); ++i) {
            const Register& r = regs[static_cast<std::size_t>(n)].at(s.channels[i]->name);
            const dsp::DdsChannel ch{dds_frequency(*s.channels[i], r, model), 0.0, 1.0, r.epoch};
            v += static_cast<std::uint32_t>(s.weight[i]) * dsp::phase_word_at(ch, s.clock, loop.rep_start(n));
            off += s.weight[i] * r.offset;
        }
        return std::pair{v, off};
    };

    const auto [v0, o0] = words(0);
    const auto [v1, o1] = words(1);
    std::uint32_t step = 0;
    for (std::size_t i = 0; i < s.channels.size(); ++i) {
        const auto& name = s.channels[i]->name;
        const Register& r1 = regs[1].at(name);
        const bool follows_reps = regs[2].at(name).epoch - r1.epoch == loop.period && loop.period > 0;
        if (!follows_reps) {
            const std::uint32_t fw = dsp::frequency_word(dds_frequency(*s.channels[i], r1, model), s.clock);
            step += static_cast<std::uint32_t>(s.weight[i]) * fw * static_cast<std::uint32_t>(loop.period);
        }
    }

    std::vector<double> dev(static_cast<std::size_t>(repetitions));
    for (std::int64_t n = 0; n < repetitions; ++n) {
        std::uint32_t v = v0;
        double o = o0;
        if (n >= 1) {
            v = v1 + static_cast<std::uint32_t>(n - 1) * step;
            o = o1;
        }
        const auto dv = static_cast<std::int32_t>(v - v0);
        const double dds_part =
            dsp::wrap_signed(kTwoPi * static_cast<double>(dv) / dsp::kPhaseWordScale + (o - o0)) / s.scale;
        dev[static_cast<std::size_t>(n)] = dds_part + lo_phase(s, n * loop.period);
        rep.worst_drift = std::max(rep.worst_drift, std::abs(dev[static_cast<std::size_t>(n)]));
    }

    rep.drift_per_rep = kTwoPi * static_cast<double>(static_cast<std::int32_t>(step)) / dsp::kPhaseWordScale / s.scale +
                        lo_phase(s, loop.period);
    rep.pass = variance(dev) < kCoherenceVarianceLimit;

    std::ostringstream note;
    if (step != 0) {
        note << "DDS phase words advance by " << static_cast<std::int32_t>(step) << " per repetition; ";
    }
    if (s.lo_combination != 0) {
        note << "LO combination " << static_cast<double>(s.lo_combination) << " Hz is not zero; ";
    }
    if (step == 0 && s.lo_combination == 0 && dev.size() > 1 && dev[1] != 0.0) {
        note << "repetition 0 differs from later repetitions; ";
    }
    rep.note = note.str();
    if (!rep.note.empty()) {
        rep.note.resize(rep.note.size() - 2);
    }
    return rep;
}

CoherenceTrace simulate_coherence(const Program& p, const CoherenceConstraint& c, PhaseModel model,
                                  std::int64_t repetitions, const LoNoise& noise)
{
    const Setup s = prepare(p, c, model);
    if (repetitions < 1) {
        throw DomainError("repetition count must be positive");
    }
    const Schedule sched = schedule_reps(p, repetitions);
    const LoopInfo loop = *sched.outer_loop;
    const auto regs = registers_at_starts(p, sched);

    CoherenceTrace tr;
    double base_dds = 0.0;
    long double base_lo = 0;
    for (std::int64_t n = 0; n < repetitions; ++n) {
        const std::int64_t t = loop.rep_start(n);
        double dds = 0.0;
        long double lo = 0;
        for (std::size_t i = 0; i < s.channels.size(); ++i) {
            const ChannelDecl& decl = *s.channels[i];
            const Register& r = regs[static_cast<std::size_t>(n)].at(decl.name);
            const dsp::DdsChannel ch{dds_frequency(decl, r, model), r.offset, 1.0, r.epoch};
            dds += s.weight[i] * dsp::dds_phase_at(ch, s.clock, t);
            if (model == PhaseModel::analog_lo) {
                const long double w = static_cast<long double>(s.weight[i]) / s.scale;
                lo += w * static_cast<long double>(kTwoPi) * decl.lo * t / static_cast<long double>(s.clock.rate());
                if (noise) {
                    lo += w * noise(decl.name, s.clock.seconds(t));
                }
            }
        }
        if (n == 0) {
            base_dds = dds;
            base_lo = lo;
        }
        tr.rep_start.push_back(t);
        tr.deviation.push_back(dsp::wrap_signed(dds - base_dds) / s.scale + static_cast<double>(lo - base_lo));
    }
    tr.variance = variance(tr.deviation);
    tr.pass = tr.variance < kCoherenceVarianceLimit;
    return tr;
}

}  // namespace rfqc::pulse
