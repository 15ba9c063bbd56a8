#pragma once

#include <span>
#include <string>
#include <vector>

#include "rfqc/transfer_function.hpp"

namespace rfqc::cal {

struct ExpFitOptions {
    int n_terms = 2;
    std::vector<double> initial_taus;  ///< optional first start, seconds
    std::vector<double> weights;       ///< optional per-point weights
    int max_iterations = 200;
    double tolerance = 1e-10;  ///< relative step in log tau
    int starts = 8;            ///< log-spaced starting sets besides `initial_taus`
    double merge_tolerance = 0.01;
};

/// Fit of y(t) = 1 + sum_k a_k exp(-t / tau_k).
struct ExpFitResult {
    std::vector<device::ExpTerm> terms;  ///< sorted by tau
    double residual_norm = 0.0;          ///< sqrt(sum w r^2)
    int n_terms = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;

    device::TransferFunction transfer_function() const { return {terms}; }
    double evaluate(double t) const;
};

/// Variable projection: amplitudes are solved linearly for every set of time constants, and
/// Levenberg-Marquardt moves log tau on the projected residual. Several starts are tried and the
/// lowest residual kept. Time constants closer than `merge_tolerance` are merged with a warning.
/// Throws DomainError if n_terms is outside 1..4, there are fewer than 4 n_terms points, or the
/// inputs differ in length.
ExpFitResult fit_exponentials(std::span<const double> t, std::span<const double> y, const ExpFitOptions& options);

}  // namespace rfqc::cal
