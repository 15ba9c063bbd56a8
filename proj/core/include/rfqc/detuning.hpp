#pragma once

#include <span>
#include <vector>

namespace rfqc::cal {

/// Instantaneous detuning recovered from Ramsey quadratures.
struct DetuningTrace {
    std::vector<double> t;      ///< s
    std::vector<double> delta;  ///< Hz; 0 where invalid
    std::vector<bool> valid;

    std::size_t valid_count() const;
};

/// Quadratures below this squared magnitude are masked.
inline constexpr double kQuadratureFloor = 1e-6;

/// Phase is the unwrapped angle of X + iY; the detuning is its central-difference derivative over
/// 2 pi, one-sided at segment ends. Masked points split the trace into independently unwrapped
/// segments; a segment of a single point is masked too.
/// Throws DomainError for unequal lengths, fewer than 3 points or a non-positive dt.
DetuningTrace extract_detuning(std::span<const double> x, std::span<const double> y, double dt);

/// Map Ramsey populations (1 + cos phi) / 2 and (1 + sin phi) / 2 to cos phi and sin phi.
std::vector<double> population_to_quadrature(std::span<const double> population);

}  // namespace rfqc::cal
