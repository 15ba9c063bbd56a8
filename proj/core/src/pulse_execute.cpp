#include "rfqc/pulse_execute.hpp"

#include <map>

#include "rfqc/errors.hpp"

namespace rfqc::pulse {

namespace {

SampleClock resolve_clock(const Program& p, const HardwareConfig& hw)
{
    if (hw.clock_rate > 0.0 && p.clock && *p.clock != hw.clock_rate) {
        throw DomainError("program clock differs from the hardware clock");
    }
    if (hw.clock_rate > 0.0) {
        return SampleClock(hw.clock_rate);
    }
    if (!p.clock) {
        throw DomainError("no clock: declare one in the program or the hardware config");
    }
    return SampleClock(*p.clock);
}

}  // namespace

ExecutionResult execute(const Program& p, const HardwareConfig& hw)
{
    const SampleClock clock = resolve_clock(p, hw);
    ExecutionResult result;
    result.schedule = schedule(p);
    const Schedule& sched = result.schedule;
    if (sched.end > hw.max_samples) {
        throw CapacityError("program spans " + std::to_string(sched.end) + " samples, limit " +
                            std::to_string(hw.max_samples));
    }

    std::map<std::string, dsp::DdsChannel> regs;
    std::map<std::string, std::size_t> index;
    for (const auto& c : p.channels) {
        regs[c.name] = dsp::DdsChannel{c.freq, 0.0, 1.0, 0};
        index[c.name] = result.channels.size();
        result.channels.push_back(ChannelOutput{
            c.name, ComplexWaveform{std::vector<Complex>(static_cast<std::size_t>(sched.end)), clock, 0}});
    }
    std::map<std::string, dsp::Envelope> envelopes;
    for (const auto& e : p.envelopes) {
        envelopes.emplace(e.name, build_envelope(e));
    }

    for (const auto& ins : sched.instructions) {
        switch (ins.action) {
        case Action::set_freq: regs[ins.channel].freq = ins.value; break;
        case Action::set_phase: regs[ins.channel].phase_offset = ins.value; break;
        case Action::set_gain: regs[ins.channel].gain = ins.value; break;
        case Action::phase_reset: regs[ins.channel].reset_epoch = ins.start; break;
        case Action::trigger:
            result.triggers.push_back(ReadoutTrigger{ins.channel, ins.start, ins.duration, ins.value, ins.line});
            break;
        case Action::play: {
            const ChannelDecl& decl = *p.find_channel(ins.channel);
            const dsp::DdsChannel& reg = regs[ins.channel];
            const dsp::Envelope& env = envelopes.at(ins.operand);
            auto& out = result.channels[index[ins.channel]].waveform.samples;
            if (decl.mux_tones.empty()) {
                const ComplexWaveform w = dsp::synthesize_pulse(reg, env, ins.start, clock, hw.generator);
                std::copy(w.samples.begin(), w.samples.end(), out.begin() + w.start);
                break;
            }
            std::vector<dsp::DdsChannel> tones;
            for (double f : decl.mux_tones) {
                dsp::DdsChannel t = reg;
                t.freq = f;
                tones.push_back(t);
            }
            const ComplexWaveform carrier =
                dsp::synthesize_mux(tones, static_cast<std::size_t>(ins.duration), clock, ins.start, hw.generator);
            const dsp::Envelope shaped =
                env.rate_divisor == 1 ? env : dsp::interpolate_envelope(env, hw.generator.interpolator);
            for (std::size_t k = 0; k < carrier.samples.size(); ++k) {
                out[static_cast<std::size_t>(ins.start) + k] = carrier.samples[k] * shaped.samples[k];
            }
            break;
        }
        }
    }
    return result;
}

}  // namespace rfqc::pulse
