#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfqc/pulse_ast.hpp"
#include "rfqc/pulse_schedule.hpp"
#include "rfqc/synth.hpp"

namespace rfqc::pulse {

struct HardwareConfig {
    double clock_rate = 0.0;  ///< Hz; 0 takes the program's clock
    dsp::GeneratorConfig generator{};
    std::int64_t max_samples = std::int64_t{1} << 26;  ///< per-channel output limit
};

struct ChannelOutput {
    std::string channel;
    ComplexWaveform waveform;
};

struct ReadoutTrigger {
    std::string readout;
    std::int64_t time = 0;
    std::int64_t length = 0;
    double freq = 0.0;
    int line = 0;
};

struct ExecutionResult {
    std::vector<ChannelOutput> channels;  ///< declaration order, each spanning [0, schedule end)
    std::vector<ReadoutTrigger> triggers;  ///< time order
    Schedule schedule;
};

/// Render every channel. A play uses the channel registers (frequency, phase, gain, reset
/// epoch) in force at its first sample. Mux channels sum one flat tone per declared frequency,
/// all sharing the channel gain, phase offset and epoch. Throws DomainError without a clock or
/// on a clock mismatch, CapacityError past `max_samples`; generator errors propagate.
ExecutionResult execute(const Program& p, const HardwareConfig& hw = {});

}  // namespace rfqc::pulse
