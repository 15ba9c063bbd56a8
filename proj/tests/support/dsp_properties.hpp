#pragma once

#include <cstdint>
#include <string>

namespace rfqc::testing {

/// Outcome of one randomized property run.
struct PropertyOutcome {
    int cases = 0;
    int failures = 0;
    double worst = 0.0;  ///< largest error seen, in the property's own units
    std::string first_failure;

    bool ok() const noexcept { return cases > 0 && failures == 0; }
};

/// A pulse played after a gap equals the same samples of an unbroken pulse, bit for bit.
PropertyOutcome gap_coherence(std::uint64_t seed, int cases);

/// Mux of a union equals the sum of mux outputs before quantization (1e-14) and within one
/// LSB per component after it.
PropertyOutcome mux_linearity(std::uint64_t seed, int cases);

/// Summed channel power of a 16-channel bank stays within the ripple bound of the input power,
/// from the analytic responses and, for every tenth case, from channelized samples.
PropertyOutcome pfb_energy(std::uint64_t seed, int cases);

/// Relative RMS error of x16 interpolation below 1e-3 for sums of tones at or below f_s/64,
/// measured away from the held ends.
PropertyOutcome interpolation(std::uint64_t seed, int cases);

}  // namespace rfqc::testing
