#pragma once

#include <vector>

#include "rfqc/gates.hpp"

namespace rfqc::cal {

struct GatePhaseOptions {
    int blocks = 402;                   ///< must be 4n + 2
    double theta = 0.785398163397448;   ///< rotation per gate (pi / 4)
    std::vector<int> ladder{1, 4, 40, 400};
    double sensitivity_window = 10.0;   ///< degrees around the optimum
    double flat_threshold = 1e-3;       ///< smallest population swing accepted
};

struct GatePhaseResult {
    double phi_a_deg = 0.0;   ///< optimum of the phi_A sweep
    double phi_11_deg = 0.0;  ///< all angles wrapped to [0, 360)
    double phi_01_deg = 0.0;
    double phi_10_deg = 0.0;
    double phi_zz_deg = 0.0;
    double peak_population = 0.0;
    double sensitivity = 0.0;  ///< max |dP/dphi_A| near the optimum, per degree
    std::vector<double> sweep_deg;
    std::vector<double> sweep_population;
};

/// |11> population after `blocks` repetitions of Z(phi_A, 0) * U starting in |00>.
double gate_sweep_population(const device::GatePhases& g, double phi_a_deg, const GatePhaseOptions& options = {});

/// Sweep phi_A over [0, 360) on a 1 degree grid, refine by golden section and read
/// phi_11 = -phi_A. Companion sequences start from |+>|0> (or |0>|+>), tie the other Z phase to
/// cancel phi_11, and close with a Hadamard; their lengths climb `ladder`, each level choosing
/// the branch nearest the previous estimate of phi_10 (or phi_01).
/// Throws DomainError for a block count not of the form 4n + 2, FitError for a flat sweep.
GatePhaseResult calibrate_gate_phase(const device::GatePhases& truth, const GatePhaseOptions& options = {});

/// Wrap degrees to [0, 360).
double wrap_deg(double deg);

}  // namespace rfqc::cal
