#include "rfqc/lorentzian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rfqc/errors.hpp"

namespace rfqc::cal {

double LorentzianFit::operator()(double f) const noexcept
{
    const double d = f - center;
    return amplitude * width * width / (width * width + d * d);
}

LorentzianFit fit_lorentzian(std::span<const double> freqs, std::span<const double> pops)
{
    if (freqs.size() != pops.size()) {
        throw DomainError("frequency and population lists differ in length");
    }
    if (freqs.size() < 5) {
        throw DomainError("Lorentzian fit needs at least 5 points");
    }
    const auto n = freqs.size();
    const auto [fmin_it, fmax_it] = std::minmax_element(freqs.begin(), freqs.end());
    const double f0 = 0.5 * (*fmin_it + *fmax_it);
    const double scale = 0.5 * (*fmax_it - *fmin_it);
    if (!(scale > 0.0)) {
        throw DomainError("frequency grid has zero span");
    }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = (freqs[i] - f0) / scale;
    }

    const auto peak = static_cast<std::size_t>(std::max_element(pops.begin(), pops.end()) - pops.begin());
    std::vector<double> sorted(pops.begin(), pops.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
    const double floor = sorted[n / 2];
    const double height = pops[peak];
    if (!(height > 0.0) || !(height - floor > 1e-9 * std::max(1.0, std::abs(height)))) {
        throw FitError("no peak above the noise floor");
    }
    if (u[peak] == -1.0 || u[peak] == 1.0) {
        throw FitError("peak lies on the edge of the frequency grid");
    }

    // Initial width from the half-maximum crossings.
    double half_width = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pops[i] >= 0.5 * height) {
            half_width = std::max(half_width, std::abs(u[i] - u[peak]));
        }
    }
    Eigen::Vector3d x(u[peak], std::max(half_width, 1e-3), height);

    auto residuals = [&](const Eigen::Vector3d& p, Eigen::VectorXd& r, Eigen::MatrixXd* j) {
        r.resize(static_cast<Eigen::Index>(n));
        if (j != nullptr) {
            j->resize(static_cast<Eigen::Index>(n), 3);
        }
        const double w2 = p(1) * p(1);
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            const double d = u[i] - p(0);
            const double den = w2 + d * d;
            const double l = w2 / den;
            r(k) = pops[i] - p(2) * l;
            if (j != nullptr) {
                (*j)(k, 0) = -p(2) * 2.0 * w2 * d / (den * den);
                (*j)(k, 1) = -p(2) * 2.0 * p(1) * d * d / (den * den);
                (*j)(k, 2) = -l;
            }
        }
        return r.squaredNorm();
    };

    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    double cost = residuals(x, r, &jac);
    double lambda = 1e-3;
    for (int it = 0; it < 200 && cost > 0.0; ++it) {
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d g = jac.transpose() * r;
        bool accepted = false;
        Eigen::Vector3d step = Eigen::Vector3d::Zero();
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::Matrix3d a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            step = -a.ldlt().solve(g);
            Eigen::Vector3d next = x + step;
            next(1) = std::abs(next(1));
            Eigen::VectorXd rn;
            const double c = residuals(next, rn, nullptr);
            if (std::isfinite(c) && c <= cost) {
                x = next;
                cost = residuals(x, r, &jac);
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!accepted || step.cwiseAbs().maxCoeff() < 1e-14 * (1.0 + x.cwiseAbs().maxCoeff())) {
            break;
        }
    }

    if (!(x(0) >= -1.0 && x(0) <= 1.0) || !(x(1) > 0.0) || !(x(2) > 0.0)) {
        throw FitError("Lorentzian fit left the frequency grid");
    }
    return {f0 + x(0) * scale, x(1) * scale, x(2), std::sqrt(cost)};
}

}  // namespace rfqc::cal
