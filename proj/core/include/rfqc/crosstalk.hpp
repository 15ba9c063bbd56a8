#pragma once

#include <array>
#include <span>
#include <vector>

#include "rfqc/waveform.hpp"

namespace rfqc::device {

/// Two flux-tunable qubits whose loops pick up part of a coupler drive. The sum-frequency
/// transition |00> <-> |11> is AC-Stark shifted by the drive that reaches the loops.
///
/// Flux lines are (coupler, A, B); loops are (A, B). The crosstalk matrix has unit entries
/// from each qubit line to its own loop.
struct CrosstalkScenario {
    double f_a = 48.4e6;  ///< bare qubit frequencies, Hz
    double f_b = 61.8e6;
    double stark_coeff = 0.0;  ///< Hz per (drive amplitude)^2
    double drive_amplitude = 1.0;
    double drive_phase = 0.0;  ///< rad
    std::array<double, 2> coupler_leak{0.0, 0.0};  ///< coupler line into loops A, B
    double a_into_b = 0.0;                          ///< line A into loop B
    double b_into_a = 0.0;                          ///< line B into loop A
    double rabi_rate = 2e6;                         ///< Hz, on the sum transition

    /// Throws DomainError if an off-diagonal entry exceeds 0.25 in magnitude or a rate is not positive.
    void validate() const;
    double bare_sum() const noexcept { return f_a + f_b; }
};

/// Scenario whose coupler leaks `leak` into loop A only, with the Stark coefficient chosen so
/// the uncompensated shift equals `shift_hz`.
CrosstalkScenario scenario_with_shift(double shift_hz, double leak = 0.25, double drive_phase = 0.0);

/// Cancellation tones on lines A and B.
struct Compensation {
    std::array<double, 2> amplitude{0.0, 0.0};
    std::array<double, 2> phase{0.0, 0.0};  ///< rad
};

/// Complex drive reaching loops A and B.
std::array<Complex, 2> residual_drive(const CrosstalkScenario& s, const Compensation& c);

/// stark_coeff * (|r_A|^2 + |r_B|^2).
double stark_shift(const CrosstalkScenario& s, const Compensation& c);

/// Resonance of the driven sum transition: f_a + f_b - stark shift.
double chevron_centre(const CrosstalkScenario& s, const Compensation& c);

/// Rabi population Omega^2 / (Omega^2 + delta^2) sin^2(sqrt(Omega^2 + delta^2) t / 2).
double chevron_population(const CrosstalkScenario& s, const Compensation& c, double f_drive, double length);

/// Oscillation contrast at one drive frequency: Omega^2 / (Omega^2 + delta^2).
double rabi_contrast(const CrosstalkScenario& s, const Compensation& c, double f_drive);

struct ChevronGrid {
    std::vector<double> freqs;
    std::vector<double> lengths;
    std::vector<double> values;  ///< values[i * lengths.size() + j] at (freqs[i], lengths[j])

    double at(std::size_t i, std::size_t j) const { return values.at(i * lengths.size() + j); }
};

ChevronGrid chevron_map(const CrosstalkScenario& s, const Compensation& c, std::span<const double> freqs,
                        std::span<const double> lengths);

}  // namespace rfqc::device
