#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfqc/envelope.hpp"

namespace rfqc::pulse {

/// Source position of a declaration or statement (1-based). Spans never take part in AST
/// equality, so a program and its pretty-printed reparse compare equal.
struct Span {
    int line = 0;
    int col = 0;

    bool operator==(const Span&) const noexcept { return true; }
};

struct ChannelDecl {
    std::string name;
    double freq = 0.0;              ///< initial DDS frequency, Hz
    double lo = 0.0;                ///< analog LO frequency, Hz (analog_lo phase model only)
    std::vector<double> mux_tones;  ///< nonempty for a multiplexed generator
    Span span;

    bool operator==(const ChannelDecl&) const = default;
};

struct EnvelopeDecl {
    std::string name;
    dsp::EnvelopeShape shape = dsp::EnvelopeShape::flat;
    std::int64_t length = 0;  ///< stored samples
    double sigma = 0.0;       ///< stored samples
    double alpha = 0.0;
    double amplitude = 1.0;
    bool interpolated = false;  ///< stored at 1/16 rate
    std::vector<double> values;  ///< user shape only
    Span span;

    bool operator==(const EnvelopeDecl&) const = default;
};

struct ReadoutDecl {
    std::string name;
    double freq = 0.0;
    std::int64_t length = 0;  ///< default acquisition window, samples
    Span span;

    bool operator==(const ReadoutDecl&) const = default;
};

/// One term of a phase combination. The coefficient is half_units / 2, so +-1 is +-2 and
/// +-1/2 is +-1.
struct Term {
    std::string channel;
    int half_units = 2;

    double coefficient() const noexcept { return 0.5 * half_units; }
    bool operator==(const Term&) const = default;
};

/// Signed combination of channel phases that must stay constant from repetition to repetition.
struct CoherenceConstraint {
    std::string name;
    std::vector<Term> terms;
    Span span;

    bool operator==(const CoherenceConstraint&) const = default;
};

enum class Op { set_freq, set_phase, set_gain, play, trigger, phase_reset, wait, sync, repeat };

/// One body statement. Field use depends on `op`:
///   set_freq/set_phase/set_gain  targets[0], value (Hz, rad, gain)
///   play                         targets[0], operand = envelope, at
///   trigger                      targets[0] = readout, amount = length (0: declared), at
///   phase_reset                  targets (empty: all channels), at
///   wait                         amount = samples
///   repeat                       amount = count, period (empty: body span), body
struct Statement {
    Op op = Op::wait;
    std::vector<std::string> targets;
    std::string operand;
    double value = 0.0;
    std::optional<std::int64_t> at;
    std::int64_t amount = 0;
    std::optional<std::int64_t> period;
    std::vector<Statement> body;
    Span span;

    bool operator==(const Statement&) const = default;
};

struct Program {
    std::optional<double> clock;  ///< generator sample rate, Hz
    std::vector<ChannelDecl> channels;
    std::vector<EnvelopeDecl> envelopes;
    std::vector<ReadoutDecl> readouts;
    std::vector<CoherenceConstraint> constraints;
    std::vector<Statement> body;

    bool operator==(const Program&) const = default;

    const ChannelDecl* find_channel(const std::string& name) const noexcept;
    const EnvelopeDecl* find_envelope(const std::string& name) const noexcept;
    const ReadoutDecl* find_readout(const std::string& name) const noexcept;
    const CoherenceConstraint* find_constraint(const std::string& name) const noexcept;
};

/// Canonical source text. parse(print(p)) == p for every valid program.
std::string print(const Program& p);

/// Stored envelope for a declaration.
dsp::Envelope build_envelope(const EnvelopeDecl& decl);

/// Number of instructions in the body counting nested statements once (not unrolled).
std::size_t statement_count(const Program& p) noexcept;

}  // namespace rfqc::pulse
