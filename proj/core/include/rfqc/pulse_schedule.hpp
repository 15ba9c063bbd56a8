#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfqc/pulse_ast.hpp"

namespace rfqc::pulse {

enum class Action { set_freq, set_phase, set_gain, play, trigger, phase_reset };

/// One scheduled action at an absolute sample index. Register writes have zero duration.
struct TimedInstruction {
    std::string channel;  ///< channel, or readout name for triggers
    Action action = Action::play;
    std::int64_t start = 0;
    std::int64_t duration = 0;
    double value = 0.0;    ///< frequency, phase or gain for register writes
    std::string operand;   ///< envelope name for plays
    int line = 0;          ///< source line
    std::int64_t repetition = -1;  ///< index within the outermost repeat, -1 outside it

    std::int64_t end() const noexcept { return start + duration; }
};

/// The first top-level repeat after unrolling.
struct LoopInfo {
    std::int64_t start = 0;
    std::int64_t period = 0;
    std::int64_t count = 0;

    std::int64_t rep_start(std::int64_t n) const noexcept { return start + n * period; }
};

struct Schedule {
    std::vector<TimedInstruction> instructions;  ///< sorted by start, then program order
    std::int64_t end = 0;                        ///< last sample occupied, exclusive
    std::optional<LoopInfo> outer_loop;
};

struct ScheduleOptions {
    /// Replaces the count of the outermost repeat (used by the coherence checkers).
    std::optional<std::int64_t> outer_repeat_count;
    std::size_t max_instructions = 20'000'000;
};

/// Unroll the program into absolute-time instructions.
///
/// A play without `@` starts at max(now, end of the channel's previous play); `@ t` starts at
/// now + t. Plays do not advance `now`; `wait` does and `sync` moves it to the latest play end.
/// Each repeat iteration starts `period` after the previous one (default: the body span), and
/// `now` resumes after the last iteration. Throws ConflictError naming both source lines when
/// two plays or two triggers overlap on one target, DomainError for a period shorter than the
/// body span, CapacityError past `max_instructions`.
Schedule schedule(const Program& p, const ScheduleOptions& opts = {});

/// Plays of the envelope last this many generator samples (16x memory for interpolated shapes).
std::int64_t play_duration(const EnvelopeDecl& env) noexcept;

}  // namespace rfqc::pulse
