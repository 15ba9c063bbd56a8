#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rfqc/pulse_ast.hpp"
#include "rfqc/pulse_schedule.hpp"

namespace rfqc::pulse {

/// How a channel's phase is produced.
///   dds        the whole phase comes from the resettable DDS accumulator.
///   analog_lo  an analog LO at the channel's `lo` frequency supplies 2 pi f_L t, which no reset
///              touches; the DDS plays the remainder f - f_L.
enum class PhaseModel { dds, analog_lo };

/// Phase wander added to a channel's LO part: (channel, seconds since program start) -> rad.
using LoNoise = std::function<double(const std::string& channel, double seconds)>;

struct CoherenceReport {
    bool pass = false;
    double drift_per_rep = 0.0;  ///< rad per repetition (steady state, unwrapped LO part)
    double worst_drift = 0.0;    ///< max |deviation from repetition 0| over the checked reps
    double lo_combination = 0.0; ///< sum of c_i f_L,i in Hz (0 under the dds model)
    std::int64_t period = 0;     ///< samples between repetition starts
    std::int64_t repetitions = 0;
    std::string note;
};

struct CoherenceTrace {
    std::vector<std::int64_t> rep_start;  ///< sample index t_N
    std::vector<double> deviation;        ///< constraint value minus its repetition-0 value, rad
    double variance = 0.0;                ///< population variance of `deviation`
    bool pass = false;                    ///< variance < kCoherenceVarianceLimit
};

inline constexpr double kCoherenceVarianceLimit = 1e-20;

/// Static check. The constraint is evaluated at every start t_N of the outermost repeat (after
/// the instructions scheduled at t_N take effect) using exact 32-bit phase words; register
/// state is extracted from the first repetitions and extrapolated. Combinations with a 1/2
/// coefficient are compared modulo pi, since half a phase is only defined up to pi.
/// Throws DomainError when the program has no repeat or the constraint names an unknown
/// channel or a mux channel.
CoherenceReport check_phase_coherence(const Program& p, const CoherenceConstraint& c, PhaseModel model,
                                      std::int64_t repetitions = 100);

/// Brute-force counterpart: schedules `repetitions` iterations, replays the register writes
/// and evaluates the constraint numerically at each t_N. `noise` (optional) perturbs the LO
/// parts under the analog model.
CoherenceTrace simulate_coherence(const Program& p, const CoherenceConstraint& c, PhaseModel model,
                                  std::int64_t repetitions = 100, const LoNoise& noise = {});

}  // namespace rfqc::pulse
