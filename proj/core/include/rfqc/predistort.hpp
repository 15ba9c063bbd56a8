#pragma once

#include <span>
#include <vector>

#include "rfqc/exp_fit.hpp"
#include "rfqc/transfer_function.hpp"

namespace rfqc::cal {

/// Waveform that the line `h` turns into `target`: the exact inverse of its one-pole recursions.
/// Throws DomainError when 1 + sum a_k is zero or the inverse is unstable.
std::vector<double> predistort(const device::TransferFunction& h, std::span<const double> target, double rate);
std::vector<double> predistort(const ExpFitResult& fit, std::span<const double> target, double rate);

}  // namespace rfqc::cal
