#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rfqc::device {

/// Slow phase wander of a free-running analog LO.
struct DriftParams {
    double sine_amplitude = 0.3;  ///< rad
    double period = 360.0;        ///< s
    double ramp = 1e-5;           ///< rad/s, thermal drift
    double walk_sigma = 2e-3;     ///< rad per sqrt(s)
    double walk_step = 1.0;       ///< s between random-walk knots
};

/// Per-channel drift processes, reproducible from the seed. Each channel gets its own sine
/// phase and random walk; the walk is linear between knots.
class LoDrift {
public:
    LoDrift(DriftParams params, std::uint64_t seed, const std::vector<std::string>& channels, double duration);

    /// Phase excess of `channel` at `t` seconds. Channels not named at construction read 0.
    double phase(const std::string& channel, double t) const;

    const DriftParams& params() const noexcept { return params_; }

private:
    struct Track {
        double sine_phase = 0.0;
        std::vector<double> walk;
    };

    DriftParams params_;
    std::map<std::string, Track> tracks_;
};

}  // namespace rfqc::device
