#include "rfqc/drift.hpp"

#include <cmath>
#include <random>

#include "rfqc/errors.hpp"
#include "rfqc/waveform.hpp"

namespace rfqc::device {

LoDrift::LoDrift(DriftParams params, std::uint64_t seed, const std::vector<std::string>& channels, double duration)
    : params_(params)
{
    if (!(params_.period > 0.0) || !(params_.walk_step > 0.0) || !(duration >= 0.0)) {
        throw DomainError("drift period, walk step and duration must be positive");
    }
    const auto knots = static_cast<std::size_t>(std::ceil(duration / params_.walk_step)) + 2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::normal_distribution<double> step(0.0, params_.walk_sigma * std::sqrt(params_.walk_step));
    for (const auto& ch : channels) {
        Track t;
        t.sine_phase = angle(rng);
        t.walk.resize(knots);
        for (std::size_t k = 1; k < knots; ++k) {
            t.walk[k] = t.walk[k - 1] + step(rng);
        }
        tracks_[ch] = std::move(t);
    }
}

double LoDrift::phase(const std::string& channel, double t) const
{
    const auto it = tracks_.find(channel);
    if (it == tracks_.end()) {
        return 0.0;
    }
    const Track& tr = it->second;
    const double u = std::max(0.0, t) / params_.walk_step;
    const auto k = std::min(static_cast<std::size_t>(u), tr.walk.size() - 2);
    const double frac = u - static_cast<double>(k);
    const double walk = tr.walk[k] + frac * (tr.walk[k + 1] - tr.walk[k]);
    return params_.sine_amplitude * std::sin(kTwoPi * t / params_.period + tr.sine_phase) + params_.ramp * t + walk;
}

}  // namespace rfqc::device
