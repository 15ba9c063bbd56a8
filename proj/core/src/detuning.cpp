#include "rfqc/detuning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rfqc/errors.hpp"

namespace rfqc::cal {

std::size_t DetuningTrace::valid_count() const
{
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

DetuningTrace extract_detuning(std::span<const double> x, std::span<const double> y, double dt)
{
    if (x.size() != y.size()) {
        throw DomainError("quadrature traces differ in length");
    }
    if (x.size() < 3) {
        throw DomainError("detuning extraction needs at least 3 points");
    }
    if (!(dt > 0.0)) {
        throw DomainError("time step must be positive");
    }
    const std::size_t n = x.size();
    DetuningTrace out;
    out.t.resize(n);
    out.delta.assign(n, 0.0);
    out.valid.assign(n, false);
    std::vector<double> phase(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.t[i] = static_cast<double>(i) * dt;
        out.valid[i] = x[i] * x[i] + y[i] * y[i] >= kQuadratureFloor;
    }

    constexpr double pi = std::numbers::pi;
    const double scale = 1.0 / (2.0 * pi);
    std::size_t i = 0;
    while (i < n) {
        if (!out.valid[i]) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < n && out.valid[end]) {
            ++end;
        }
        // Unwrap [i, end).
        phase[i] = std::atan2(y[i], x[i]);
        for (std::size_t k = i + 1; k < end; ++k) {
            double p = std::atan2(y[k], x[k]);
            double d = p - phase[k - 1];
            d -= 2.0 * pi * std::round(d / (2.0 * pi));
            phase[k] = phase[k - 1] + d;
        }
        if (end - i == 1) {
            out.valid[i] = false;
        } else {
            for (std::size_t k = i; k < end; ++k) {
                double d = 0.0;
                if (k == i) {
                    d = (phase[k + 1] - phase[k]) / dt;
                } else if (k + 1 == end) {
                    d = (phase[k] - phase[k - 1]) / dt;
                } else {
                    d = (phase[k + 1] - phase[k - 1]) / (2.0 * dt);
                }
                out.delta[k] = d * scale;
            }
        }
        i = end;
    }
    return out;
}

std::vector<double> population_to_quadrature(std::span<const double> population)
{
    std::vector<double> q(population.size());
    std::transform(population.begin(), population.end(), q.begin(), [](double p) { return 2.0 * p - 1.0; });
    return q;
}

}  // namespace rfqc::cal
