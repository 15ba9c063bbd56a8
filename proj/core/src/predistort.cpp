#include "rfqc/predistort.hpp"

namespace rfqc::cal {

std::vector<double> predistort(const device::TransferFunction& h, std::span<const double> target, double rate)
{
    return device::invert_channel(target, h, rate);
}

std::vector<double> predistort(const ExpFitResult& fit, std::span<const double> target, double rate)
{
    return predistort(fit.transfer_function(), target, rate);
}

}  // namespace rfqc::cal
