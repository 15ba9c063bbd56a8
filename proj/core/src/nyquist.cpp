#include "rfqc/nyquist.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rfqc/errors.hpp"

namespace rfqc::dsp {

namespace {

void check_rate(double f_s)
{
    if (!(f_s > 0.0)) {
        throw DomainError("sample rate must be positive");
    }
}

double sinc(double x)
{
    if (x == 0.0) {
        return 1.0;
    }
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

struct ZoneTable {
    std::array<double, 4> normal{};
    std::array<double, 4> mix{};

    ZoneTable()
    {
        for (int z = 1; z <= 4; ++z) {
            const double centre = (z - 0.5) / 2.0;  // in units of f_s
            normal[z - 1] = std::abs(sinc(centre));
            mix[z - 1] = std::abs(sinc(centre / 2.0) * std::sin(std::numbers::pi * centre / 2.0));
        }
    }
};

}  // namespace

int nyquist_zone(double f, double f_s)
{
    check_rate(f_s);
    return static_cast<int>(std::floor(std::abs(f) / (f_s / 2.0))) + 1;
}

double fold_frequency(double f, double f_s)
{
    check_rate(f_s);
    double r = std::fmod(std::abs(f), f_s);
    if (r > f_s / 2.0) {
        r = f_s - r;
    }
    return r;
}

bool is_inverted(double f, double f_s)
{
    return nyquist_zone(f, f_s) % 2 == 0;
}

double zone_gain(DacMode mode, int zone)
{
    static const ZoneTable table;
    if (zone < 1 || zone > 4) {
        return 0.0;
    }
    return mode == DacMode::normal ? table.normal[zone - 1] : table.mix[zone - 1];
}

}  // namespace rfqc::dsp
