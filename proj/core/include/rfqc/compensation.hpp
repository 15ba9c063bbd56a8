#pragma once

#include <string>
#include <vector>

#include "rfqc/crosstalk.hpp"

namespace rfqc::cal {

struct CompensationOptions {
    int rounds = 3;
    double probe_amplitude = 0.1;  ///< amplitude used for a phase sweep while a line is still off
    double max_amplitude = 0.5;
    double amplitude_step = 0.005;
    double max_length = 500e-9;    ///< longest Rabi pulse, s
    double length_step = 2e-9;
    double chevron_span = 20e6;    ///< half span of the frequency sweep around the bare sum, Hz
    int chevron_points = 81;
};

struct CompensationResult {
    device::Compensation settings;
    double contrast_before = 0.0;  ///< at the bare sum frequency
    double contrast_after = 0.0;
    double centre_before = 0.0;    ///< Lorentzian fit of contrast vs drive frequency, Hz
    double centre_after = 0.0;
    std::vector<std::string> notes;

    /// Compensation phase of a line in degrees, [0, 360).
    double phase_deg(int line) const;
};

/// Rabi contrast at `f_drive`: the largest population over pulse length, found on a grid and
/// refined by golden-section search.
double measured_contrast(const device::CrosstalkScenario& s, const device::Compensation& c, double f_drive,
                         const CompensationOptions& options = {});

/// Chevron centre from a Lorentzian fit of measured contrast vs drive frequency.
double measured_centre(const device::CrosstalkScenario& s, const device::Compensation& c,
                       const CompensationOptions& options = {});

/// Coordinate descent over lines A and B: phase on a 1 degree grid then golden section, then
/// amplitude the same way, maximizing the contrast at the bare sum frequency. A flat landscape
/// returns zero amplitudes with a note.
CompensationResult calibrate_compensation(const device::CrosstalkScenario& s, const CompensationOptions& options = {});

}  // namespace rfqc::cal
