#pragma once

#include <span>

namespace rfqc::cal {

/// amplitude * width^2 / (width^2 + (f - center)^2); width is the half width at half maximum.
struct LorentzianFit {
    double center = 0.0;
    double width = 0.0;
    double amplitude = 0.0;
    double residual_norm = 0.0;

    double operator()(double f) const noexcept;
};

/// Least-squares Lorentzian. Throws DomainError for fewer than 5 points or unequal lengths, and
/// FitError when no peak stands above the floor, the peak sits on the grid edge, or the fitted
/// center leaves the grid.
LorentzianFit fit_lorentzian(std::span<const double> freqs, std::span<const double> populations);

}  // namespace rfqc::cal
