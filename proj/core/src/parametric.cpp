#include "rfqc/parametric.hpp"

#include <cmath>

namespace rfqc::device {

double iswap_readout_phase(double phi1, double phip, double phi2) noexcept
{
    return -std::cos(phi1 + phip - phi2);
}

Bloch parametric_project(const Bloch& b, double phig, double phic) noexcept
{
    const double phim = 0.5 * (phig - phic);
    const double ux = std::cos(phim);
    const double uy = -std::sin(phim);
    const double along = b[0] * ux + b[1] * uy;
    return {along * ux, along * uy, 0.0};
}

double norm(const Bloch& b) noexcept
{
    return std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
}

}  // namespace rfqc::device
