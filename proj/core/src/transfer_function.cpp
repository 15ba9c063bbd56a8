#include "rfqc/transfer_function.hpp"

#include <cmath>
#include <unsupported/Eigen/Polynomials>

#include "rfqc/errors.hpp"

namespace rfqc::device {

void TransferFunction::validate() const
{
    for (const auto& t : terms) {
        if (!std::isfinite(t.amplitude)) {
            throw DomainError("transfer function amplitude must be finite");
        }
        if (!(t.tau > 0.0) || !std::isfinite(t.tau)) {
            throw DomainError("transfer function time constants must be positive");
        }
    }
}

double TransferFunction::step_response(double t) const noexcept
{
    double s = 1.0;
    for (const auto& term : terms) {
        s += term.amplitude * std::exp(-t / term.tau);
    }
    return s;
}

double TransferFunction::initial_gain() const noexcept
{
    double g = 1.0;
    for (const auto& term : terms) {
        g += term.amplitude;
    }
    return g;
}

namespace {

std::vector<double> pole_factors(const TransferFunction& h, double rate)
{
    if (!(rate > 0.0)) {
        throw DomainError("sample rate must be positive");
    }
    h.validate();
    std::vector<double> alpha;
    alpha.reserve(h.terms.size());
    for (const auto& t : h.terms) {
        alpha.push_back(std::exp(-1.0 / (rate * t.tau)));
    }
    return alpha;
}

template <typename T>
std::vector<T> forward(std::span<const T> x, const TransferFunction& h, double rate)
{
    const auto alpha = pole_factors(h, rate);
    std::vector<T> w(h.terms.size(), T{});
    std::vector<T> y(x.size());
    T prev{};
    for (std::size_t n = 0; n < x.size(); ++n) {
        const T dx = x[n] - prev;
        T acc = x[n];
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = alpha[k] * w[k] + dx;
            acc += h.terms[k].amplitude * w[k];
        }
        y[n] = acc;
        prev = x[n];
    }
    return y;
}

}  // namespace

std::vector<double> apply_channel(std::span<const double> x, const TransferFunction& h, double rate)
{
    return forward<double>(x, h, rate);
}

std::vector<Complex> apply_channel(std::span<const Complex> x, const TransferFunction& h, double rate)
{
    return forward<Complex>(x, h, rate);
}

ComplexWaveform apply_channel(const ComplexWaveform& w, const TransferFunction& h)
{
    return ComplexWaveform{apply_channel(std::span<const Complex>(w.samples), h, w.clock.rate()), w.clock, w.start};
}

std::vector<std::complex<double>> channel_zeros(const TransferFunction& h, double rate)
{
    const auto alpha = pole_factors(h, rate);
    const std::size_t order = alpha.size();
    if (order == 0) {
        return {};
    }
    // Work in u = 1 - z so that zeros near z = 1 (long time constants) keep their precision:
    // z - alpha_k = p_k - u with p_k = 1 - alpha_k, and z - 1 = -u.
    std::vector<double> p(order);
    for (std::size_t k = 0; k < order; ++k) {
        p[k] = -std::expm1(-1.0 / (rate * h.terms[k].tau));
    }
    auto product_except = [&](std::size_t skip) {
        Eigen::VectorXd poly = Eigen::VectorXd::Ones(1);  // coefficients, lowest power first
        for (std::size_t j = 0; j < order; ++j) {
            if (j == skip) {
                continue;
            }
            Eigen::VectorXd next = Eigen::VectorXd::Zero(poly.size() + 1);
            next.head(poly.size()) += p[j] * poly;
            next.tail(poly.size()) -= poly;
            poly = next;
        }
        return poly;
    };
    Eigen::VectorXd num = product_except(order);
    for (std::size_t k = 0; k < order; ++k) {
        const Eigen::VectorXd part = product_except(k);
        // a_k * (-u) * part
        num.tail(part.size()) -= h.terms[k].amplitude * part;
    }
    if (std::abs(num(static_cast<Eigen::Index>(order))) < 1e-14) {
        throw DomainError("line has zero initial gain; it cannot be inverted");
    }
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(num);
    std::vector<std::complex<double>> zeros;
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
        zeros.push_back(1.0 - solver.roots()(i));
    }
    return zeros;
}

bool is_minimum_phase(const TransferFunction& h, double rate)
{
    if (std::abs(h.initial_gain()) < 1e-12) {
        return false;
    }
    for (const auto& z : channel_zeros(h, rate)) {
        if (!(std::abs(z) < 1.0)) {
            return false;
        }
    }
    return true;
}

std::vector<double> invert_channel(std::span<const double> y, const TransferFunction& h, double rate)
{
    const auto alpha = pole_factors(h, rate);
    const double g0 = h.initial_gain();
    if (std::abs(g0) < 1e-12) {
        throw DomainError("line has zero initial gain; it cannot be inverted");
    }
    if (!is_minimum_phase(h, rate)) {
        throw DomainError("line is not minimum phase; its inverse is unstable");
    }
    std::vector<double> w(h.terms.size(), 0.0);
    std::vector<double> x(y.size());
    double prev = 0.0;
    for (std::size_t n = 0; n < y.size(); ++n) {
        double carry = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            carry += h.terms[k].amplitude * (alpha[k] * w[k] - prev);
        }
        const double xn = (y[n] - carry) / g0;
        const double dx = xn - prev;
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = alpha[k] * w[k] + dx;
        }
        x[n] = xn;
        prev = xn;
    }
    return x;
}

std::vector<double> impulse_response(const TransferFunction& h, double rate, std::size_t n)
{
    std::vector<double> x(n, 0.0);
    if (n > 0) {
        x[0] = 1.0;
    }
    return apply_channel(std::span<const double>(x), h, rate);
}

double min_step_response(const TransferFunction& h)
{
    double lo = 1.0;
    double hi = 1.0;
    for (const auto& t : h.terms) {
        lo = std::min(lo, t.tau);
        hi = std::max(hi, t.tau);
    }
    double m = h.step_response(0.0);
    if (h.terms.empty()) {
        return m;
    }
    const double a = std::log(lo * 1e-3);
    const double b = std::log(hi * 50.0);
    constexpr int kPoints = 4000;
    for (int i = 0; i <= kPoints; ++i) {
        m = std::min(m, h.step_response(std::exp(a + (b - a) * i / kPoints)));
    }
    return m;
}

TransferFunction random_transfer_function(std::mt19937_64& rng, double rate, const RandomLineSpec& spec)
{
    std::uniform_int_distribution<int> count(1, spec.max_terms);
    std::uniform_real_distribution<double> amp(-spec.max_amplitude, spec.max_amplitude);
    std::uniform_real_distribution<double> logtau(std::log(spec.tau_min), std::log(spec.tau_max));
    for (;;) {
        TransferFunction h;
        const int n = count(rng);
        for (int k = 0; k < n; ++k) {
            const double a = amp(rng);
            const double tau = std::exp(logtau(rng));
            h.terms.push_back(ExpTerm{a, tau});
        }
        if (min_step_response(h) >= spec.min_step && is_minimum_phase(h, rate)) {
            return h;
        }
    }
}

}  // namespace rfqc::device
