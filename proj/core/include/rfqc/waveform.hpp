#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace rfqc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Complex = std::complex<double>;

/// A converter clock. Every timestamp in the library is an integer sample index on one of these.
class SampleClock {
public:
    /// Throws DomainError unless `rate_hz` is finite and positive.
    explicit SampleClock(double rate_hz, std::int64_t epoch = 0);

    double rate() const noexcept { return rate_; }
    std::int64_t epoch() const noexcept { return epoch_; }
    double period() const noexcept { return 1.0 / rate_; }

    /// Seconds elapsed between the clock epoch and sample `n`.
    double seconds(std::int64_t n) const noexcept
    {
        return static_cast<double>(n - epoch_) / rate_;
    }

    bool operator==(const SampleClock&) const = default;

private:
    double rate_;
    std::int64_t epoch_;
};

/// Uniformly sampled complex samples starting at sample index `start` of `clock`.
struct ComplexWaveform {
    std::vector<Complex> samples;
    SampleClock clock{1.0};
    std::int64_t start = 0;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    std::int64_t end() const noexcept
    {
        return start + static_cast<std::int64_t>(samples.size());
    }

    /// Sample at absolute index `n`; zero outside [start, end).
    Complex at(std::int64_t n) const noexcept
    {
        if (n < start || n >= end()) {
            return {};
        }
        return samples[static_cast<std::size_t>(n - start)];
    }

    /// True when every sample is finite.
    bool finite() const noexcept;
};

/// Sum of squared magnitudes.
double energy(const std::vector<Complex>& samples) noexcept;

}  // namespace rfqc
