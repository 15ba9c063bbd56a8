#include "rfqc/pulse_schedule.hpp"

#include <algorithm>
#include <map>

#include "rfqc/errors.hpp"

namespace rfqc::pulse {

std::int64_t play_duration(const EnvelopeDecl& env) noexcept
{
    return env.length * (env.interpolated ? dsp::kInterpolationFactor : 1);
}

namespace {

class Scheduler {
public:
    Scheduler(const Program& p, const ScheduleOptions& opts) : p_(p), opts_(opts) {}

    Schedule run()
    {
        std::int64_t now = 0;
        walk(p_.body, now, 0);
        check_overlaps();
        std::stable_sort(out_.instructions.begin(), out_.instructions.end(),
                         [](const TimedInstruction& a, const TimedInstruction& b) { return a.start < b.start; });
        out_.end = now;
        for (const auto& ins : out_.instructions) {
            out_.end = std::max(out_.end, ins.end());
        }
        return std::move(out_);
    }

private:
    void emit(TimedInstruction ins)
    {
        if (out_.instructions.size() >= opts_.max_instructions) {
            throw CapacityError("schedule exceeds " + std::to_string(opts_.max_instructions) + " instructions");
        }
        ins.repetition = rep_;
        latest_ = std::max(latest_, ins.end());
        out_.instructions.push_back(std::move(ins));
    }

    void walk(const std::vector<Statement>& body, std::int64_t& now, int depth)
    {
        for (const auto& s : body) {
            step(s, now, depth);
        }
    }

    void step(const Statement& s, std::int64_t& now, int depth)
    {
        const int line = s.span.line;
        switch (s.op) {
        case Op::set_freq:
        case Op::set_phase:
        case Op::set_gain: {
            const Action a = s.op == Op::set_freq ? Action::set_freq
                             : s.op == Op::set_phase ? Action::set_phase
                                                     : Action::set_gain;
            emit({s.targets.at(0), a, now, 0, s.value, {}, line});
            return;
        }
        case Op::play: {
            const auto* env = p_.find_envelope(s.operand);
            const std::string& ch = s.targets.at(0);
            const std::int64_t start = s.at ? now + *s.at : std::max(now, busy_[ch]);
            const std::int64_t dur = play_duration(*env);
            busy_[ch] = std::max(busy_[ch], start + dur);
            emit({ch, Action::play, start, dur, 0.0, s.operand, line});
            return;
        }
        case Op::trigger: {
            const auto* ro = p_.find_readout(s.targets.at(0));
            const std::int64_t start = s.at ? now + *s.at : now;
            emit({ro->name, Action::trigger, start, s.amount > 0 ? s.amount : ro->length, ro->freq, {}, line});
            return;
        }
        case Op::phase_reset: {
            const std::int64_t t = s.at ? now + *s.at : now;
            if (s.targets.empty()) {
                for (const auto& c : p_.channels) {
                    emit({c.name, Action::phase_reset, t, 0, 0.0, {}, line});
                }
            } else {
                for (const auto& c : s.targets) {
                    emit({c, Action::phase_reset, t, 0, 0.0, {}, line});
                }
            }
            return;
        }
        case Op::wait: now += s.amount; return;
        case Op::sync:
            for (const auto& [name, end] : busy_) {
                now = std::max(now, end);
            }
            return;
        case Op::repeat: repeat(s, now, depth); return;
        }
    }

    void repeat(const Statement& s, std::int64_t& now, int depth)
    {
        const bool outer = depth == 0 && !out_.outer_loop;
        const std::int64_t count = outer && opts_.outer_repeat_count ? *opts_.outer_repeat_count : s.amount;
        const std::int64_t start = now;
        if (outer) {
            out_.outer_loop = LoopInfo{start, 0, count};
            rep_ = 0;
        }
        if (count <= 0) {
            if (outer) {
                rep_ = -1;
            }
            return;
        }

        const std::int64_t saved_latest = latest_;
        latest_ = start;
        std::int64_t t = start;
        walk(s.body, t, depth + 1);
        const std::int64_t span = std::max(t, latest_) - start;
        latest_ = std::max(latest_, saved_latest);
        const std::int64_t period = s.period.value_or(span);
        if (period < span) {
            throw DomainError("line " + std::to_string(s.span.line) + ": repeat period " +
                              std::to_string(period) + " is shorter than its body (" +
                              std::to_string(span) + " samples)");
        }
        if (outer) {
            out_.outer_loop->period = period;
        }
        for (std::int64_t i = 1; i < count; ++i) {
            if (outer) {
                rep_ = i;
            }
            std::int64_t ti = start + i * period;
            walk(s.body, ti, depth + 1);
        }
        if (outer) {
            rep_ = -1;
        }
        now = start + count * period;
    }

    void check_overlaps() const
    {
        std::map<std::string, std::vector<const TimedInstruction*>> by_target;
        for (const auto& ins : out_.instructions) {
            if (ins.action == Action::play || (ins.action == Action::trigger && ins.duration > 0)) {
                by_target[ins.channel].push_back(&ins);
            }
        }
        for (auto& [target, list] : by_target) {
            std::stable_sort(list.begin(), list.end(),
                             [](const auto* a, const auto* b) { return a->start < b->start; });
            const TimedInstruction* holder = nullptr;
            for (const auto* ins : list) {
                if (holder && ins->start < holder->end()) {
                    const auto* first = holder->line <= ins->line ? holder : ins;
                    const auto* second = first == holder ? ins : holder;
                    throw ConflictError("'" + target + "': statement at line " + std::to_string(first->line) +
                                        " (samples " + std::to_string(first->start) + ".." +
                                        std::to_string(first->end()) + ") overlaps statement at line " +
                                        std::to_string(second->line) + " (samples " +
                                        std::to_string(second->start) + ".." + std::to_string(second->end()) + ")");
                }
                if (!holder || ins->end() > holder->end()) {
                    holder = ins;
                }
            }
        }
    }

    const Program& p_;
    const ScheduleOptions& opts_;
    Schedule out_;
    std::map<std::string, std::int64_t> busy_;
    std::int64_t latest_ = 0;
    std::int64_t rep_ = -1;
};

}  // namespace

Schedule schedule(const Program& p, const ScheduleOptions& opts)
{
    return Scheduler(p, opts).run();
}

}  // namespace rfqc::pulse
