#pragma once

#include <array>

namespace rfqc::device {

/// Two qubits exchanging excitations through a pumped three-wave mixer.
struct ParametricScenario {
    double f1 = 4.0e9;  ///< Hz, f2 > f1
    double f2 = 5.0e9;
    double delta = 0.0;  ///< pump detuning, Hz
    double g_eff = 1e6;  ///< exchange rate, Hz
    double phi1 = 0.0;   ///< drive phases, rad
    double phip = 0.0;
    double phi2 = 0.0;
    double phiq = 0.0;
    double phig = 0.0;
    double phic = 0.0;

    double pump_frequency() const noexcept { return f2 - f1 + delta; }
    /// Measurement axis angle (phi_g - phi_c) / 2.
    double axis_phase() const noexcept { return 0.5 * (phig - phic); }
    /// Common phase (phi_g + phi_c) / 2.
    double common_phase() const noexcept { return 0.5 * (phig + phic); }
};

/// <sigma_z,2> after the excitation swap: -cos(phi1 + phip - phi2).
double iswap_readout_phase(double phi1, double phip, double phi2) noexcept;

using Bloch = std::array<double, 3>;

/// Projection of a Bloch vector onto the in-plane axis (cos phi_m, -sin phi_m, 0) with
/// phi_m = (phig - phic) / 2. Idempotent; never lengthens the vector.
Bloch parametric_project(const Bloch& b, double phig, double phic) noexcept;

double norm(const Bloch& b) noexcept;

}  // namespace rfqc::device
