#pragma once

#include <complex>
#include <random>
#include <span>
#include <vector>

#include "rfqc/waveform.hpp"

namespace rfqc::device {

struct ExpTerm {
    double amplitude = 0.0;  ///< a_k
    double tau = 1.0;        ///< seconds

    bool operator==(const ExpTerm&) const = default;
};

/// Distorted control line with step response s(t) = 1 + sum_k a_k exp(-t / tau_k).
///
/// The discrete line samples this response exactly: driving it with a unit step from sample 0
/// gives s(n / f_s) at sample n. Each term is a one-pole recursion
///   w_k[n] = alpha_k w_k[n-1] + x[n] - x[n-1],  alpha_k = exp(-1 / (f_s tau_k)),
///   y[n]   = x[n] + sum_k a_k w_k[n],
/// with zero history before the first sample.
struct TransferFunction {
    std::vector<ExpTerm> terms;

    /// Throws DomainError for a non-positive or non-finite tau or a non-finite amplitude.
    void validate() const;
    double step_response(double t) const noexcept;
    /// Gain seen by an instantaneous edge: 1 + sum a_k.
    double initial_gain() const noexcept;

    bool operator==(const TransferFunction&) const = default;
};

std::vector<double> apply_channel(std::span<const double> x, const TransferFunction& h, double rate);
std::vector<Complex> apply_channel(std::span<const Complex> x, const TransferFunction& h, double rate);
ComplexWaveform apply_channel(const ComplexWaveform& w, const TransferFunction& h);

/// Zeros of the discrete line's transfer function H(z).
std::vector<std::complex<double>> channel_zeros(const TransferFunction& h, double rate);

/// True when every zero lies strictly inside the unit circle, i.e. the exact inverse is stable.
bool is_minimum_phase(const TransferFunction& h, double rate);

/// Exact inverse recursion: apply_channel(invert_channel(y)) == y up to rounding.
/// Throws DomainError when 1 + sum a_k is zero or the line is not minimum phase.
std::vector<double> invert_channel(std::span<const double> y, const TransferFunction& h, double rate);

/// First `n` samples of the discrete impulse response.
std::vector<double> impulse_response(const TransferFunction& h, double rate, std::size_t n);

/// Parameters of random line draws.
struct RandomLineSpec {
    int max_terms = 4;
    double max_amplitude = 0.5;
    double tau_min = 10e-9;
    double tau_max = 10e-6;
    double min_step = 0.2;  ///< reject lines whose step response dips below this
};

/// Draw 1..max_terms terms with a uniform in [-max_amplitude, max_amplitude] and log-uniform tau.
/// Draws that are not minimum phase at `rate`, or whose step response falls below
/// `min_step`, are rejected and redrawn.
TransferFunction random_transfer_function(std::mt19937_64& rng, double rate, const RandomLineSpec& spec = {});

/// Minimum of s(t) over t >= 0 (evaluated on a log grid plus t = 0).
double min_step_response(const TransferFunction& h);

}  // namespace rfqc::device
