#pragma once

#include <vector>

#include "rfqc/detuning.hpp"
#include "rfqc/exp_fit.hpp"
#include "rfqc/qubit.hpp"
#include "rfqc/transfer_function.hpp"

namespace rfqc::cal {

struct FluxPipelineConfig {
    double rate = 6.88e9;
    device::FluxQubit qubit;
    double step_amplitude = 1.0;
    double ramsey_window = 200e-9;      ///< s
    int spectroscopy_points = 60;       ///< log-spaced delays
    double spectroscopy_start = 200e-9;
    double spectroscopy_stop = 60e-6;
    int probe_points = 161;
    device::Probe probe;
    double settle_time = 10e-9;
    double settle_tolerance = 1e-3;
    double approach_time = 1e-9;
    double approach_tolerance = 1e-2;

    void validate() const;
};

/// Measured and predicted traces of one calibration run.
struct FluxPipelineResult {
    DetuningTrace ramsey;               ///< detuning from the Ramsey quadratures
    std::vector<double> ramsey_t;       ///< valid Ramsey points
    std::vector<double> ramsey_step;    ///< normalized line response at ramsey_t
    std::vector<double> spec_t;         ///< spectroscopy delays
    std::vector<double> spec_step;      ///< normalized line response from Lorentzian centers
    ExpFitResult short_fit;
    ExpFitResult long_fit;
    ExpFitResult joint_fit;
    std::vector<double> predistorted;   ///< normalized pre-distorted step
    std::vector<double> closed_loop;    ///< line output for the pre-distorted step
    double settle_error = 0.0;          ///< max |y - 1| after settle_time
    double approach_error = 0.0;        ///< max relative detuning error after approach_time
    double remeasured_error = 0.0;      ///< line response re-measured by Ramsey after settle_time, max |s - 1|
    bool pass = false;
};

/// Short-time Ramsey and long-time spectroscopy measurements of a step through `line`, a 2-term
/// fit of each, a joint 4-term refinement over both data sets, inversion, and the closed-loop check.
FluxPipelineResult run_flux_pipeline(const device::TransferFunction& line, const FluxPipelineConfig& config);

}  // namespace rfqc::cal
