#include "rfqc/exp_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfqc/errors.hpp"

namespace rfqc::cal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Problem {
    VectorXd t;
    VectorXd sw;  // sqrt of weights
    VectorXd b;   // sw * (y - 1)
};

struct Eval {
    MatrixXd e;
    VectorXd a;
    VectorXd r;
    double cost = 0.0;
};

Eval evaluate(const Problem& p, const VectorXd& theta)
{
    const auto m = p.t.size();
    const auto n = theta.size();
    Eval out;
    out.e.resize(m, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double inv_tau = std::exp(-theta(k));
        out.e.col(k) = p.sw.cwiseProduct((-p.t * inv_tau).array().exp().matrix());
    }
    out.a = out.e.colPivHouseholderQr().solve(p.b);
    out.r = p.b - out.e * out.a;
    out.cost = out.r.squaredNorm();
    return out;
}

// Kaufman's approximation of the projected Jacobian.
MatrixXd jacobian(const Problem& p, const VectorXd& theta, const Eval& ev)
{
    const auto n = theta.size();
    MatrixXd d(p.t.size(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double inv_tau = std::exp(-theta(k));
        d.col(k) = ev.a(k) * ev.e.col(k).cwiseProduct(p.t * inv_tau);
    }
    const auto qr = ev.e.colPivHouseholderQr();
    return -(d - ev.e * qr.solve(d));
}

struct Run {
    VectorXd theta;
    Eval eval;
    int iterations = 0;
    bool converged = false;
};

Run levenberg_marquardt(const Problem& p, VectorXd theta, double lo, double hi, const ExpFitOptions& o)
{
    Run run;
    Eval ev = evaluate(p, theta);
    double lambda = 1e-3;
    for (run.iterations = 0; run.iterations < o.max_iterations; ++run.iterations) {
        if (ev.cost == 0.0) {
            run.converged = true;
            break;
        }
        const MatrixXd j = jacobian(p, theta, ev);
        const MatrixXd jtj = j.transpose() * j;
        const VectorXd g = j.transpose() * ev.r;
        bool accepted = false;
        VectorXd step;
        for (int tries = 0; tries < 30; ++tries) {
            MatrixXd a = jtj;
            for (Eigen::Index k = 0; k < a.rows(); ++k) {
                a(k, k) += lambda * std::max(jtj(k, k), 1e-30);
            }
            step = -a.ldlt().solve(g);
            VectorXd next = (theta + step).cwiseMax(lo).cwiseMin(hi);
            step = next - theta;
            Eval trial = evaluate(p, next);
            if (std::isfinite(trial.cost) && trial.cost <= ev.cost) {
                theta = next;
                ev = std::move(trial);
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        const double rel = step.cwiseAbs().maxCoeff() / (1.0 + theta.cwiseAbs().maxCoeff());
        if (!accepted || rel < o.tolerance) {
            run.converged = true;
            break;
        }
    }
    run.theta = theta;
    run.eval = std::move(ev);
    return run;
}

VectorXd log_spaced(double lo, double hi, int n)
{
    VectorXd v(n);
    for (int k = 0; k < n; ++k) {
        const double f = n == 1 ? 0.5 : static_cast<double>(k) / (n - 1);
        v(k) = std::log(lo) + f * (std::log(hi) - std::log(lo));
    }
    return v;
}

}  // namespace

double ExpFitResult::evaluate(double t) const
{
    double s = 1.0;
    for (const auto& term : terms) {
        s += term.amplitude * std::exp(-t / term.tau);
    }
    return s;
}

ExpFitResult fit_exponentials(std::span<const double> t, std::span<const double> y, const ExpFitOptions& o)
{
    if (o.n_terms < 1 || o.n_terms > 4) {
        throw DomainError("number of exponential terms must lie in 1..4");
    }
    if (t.size() != y.size() || (!o.weights.empty() && o.weights.size() != t.size())) {
        throw DomainError("fit inputs differ in length");
    }
    if (t.size() < 4 * static_cast<std::size_t>(o.n_terms)) {
        throw DomainError("too few points for the requested number of terms");
    }
    if (!o.initial_taus.empty() && o.initial_taus.size() != static_cast<std::size_t>(o.n_terms)) {
        throw DomainError("initial time constants must match the number of terms");
    }

    Problem p;
    const auto m = static_cast<Eigen::Index>(t.size());
    p.t.resize(m);
    p.sw.resize(m);
    p.b.resize(m);
    double t_min = std::numeric_limits<double>::infinity();
    double t_max = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto u = static_cast<std::size_t>(i);
        p.t(i) = t[u];
        const double w = o.weights.empty() ? 1.0 : o.weights[u];
        if (!(w >= 0.0) || !std::isfinite(t[u]) || !std::isfinite(y[u])) {
            throw DomainError("fit inputs must be finite with non-negative weights");
        }
        p.sw(i) = std::sqrt(w);
        p.b(i) = p.sw(i) * (y[u] - 1.0);
        t_max = std::max(t_max, t[u]);
        if (t[u] > 0.0) {
            t_min = std::min(t_min, t[u]);
        }
    }
    if (!(t_max > 0.0)) {
        throw DomainError("fit needs positive sample times");
    }
    const double lo = std::log(t_min * 1e-2);
    const double hi = std::log(t_max * 1e2);

    std::vector<VectorXd> starts;
    if (!o.initial_taus.empty()) {
        VectorXd v(o.n_terms);
        for (int k = 0; k < o.n_terms; ++k) {
            if (!(o.initial_taus[static_cast<std::size_t>(k)] > 0.0)) {
                throw DomainError("initial time constants must be positive");
            }
            v(k) = std::clamp(std::log(o.initial_taus[static_cast<std::size_t>(k)]), lo, hi);
        }
        starts.push_back(v);
    }
    const double span_lo = std::max(t_min, t_max * 1e-4);
    for (int s = 0; s < o.starts; ++s) {
        const double shrink = std::pow(3.0, static_cast<double>(s % 4));
        const double a = span_lo * (s < 4 ? 1.0 : 2.0) * shrink;
        const double b = t_max / shrink;
        starts.push_back(log_spaced(std::min(a, b), std::max(a, b), o.n_terms));
    }

    Run best;
    best.eval.cost = std::numeric_limits<double>::infinity();
    for (const auto& s : starts) {
        Run r = levenberg_marquardt(p, s, lo, hi, o);
        if (r.eval.cost < best.eval.cost) {
            best = std::move(r);
        }
    }

    ExpFitResult out;
    out.iterations = best.iterations;
    out.converged = best.converged;
    for (Eigen::Index k = 0; k < best.theta.size(); ++k) {
        out.terms.push_back({best.eval.a(k), std::exp(best.theta(k))});
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& z) { return x.tau < z.tau; });

    bool merged = false;
    for (std::size_t k = 1; k < out.terms.size();) {
        auto& prev = out.terms[k - 1];
        const auto& cur = out.terms[k];
        if (std::abs(cur.tau - prev.tau) <= o.merge_tolerance * prev.tau) {
            std::ostringstream msg;
            msg << "time constants " << prev.tau << " s and " << cur.tau << " s merged";
            out.warnings.push_back(msg.str());
            prev.tau = std::sqrt(prev.tau * cur.tau);
            out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(k));
            merged = true;
        } else {
            ++k;
        }
    }
    if (merged) {
        VectorXd theta(static_cast<Eigen::Index>(out.terms.size()));
        for (std::size_t k = 0; k < out.terms.size(); ++k) {
            theta(static_cast<Eigen::Index>(k)) = std::log(out.terms[k].tau);
        }
        best.eval = evaluate(p, theta);
        for (std::size_t k = 0; k < out.terms.size(); ++k) {
            out.terms[k].amplitude = best.eval.a(static_cast<Eigen::Index>(k));
        }
    }
    out.n_terms = static_cast<int>(out.terms.size());
    out.residual_norm = std::sqrt(best.eval.cost);
    if (!out.converged) {
        std::ostringstream msg;
        msg << "no convergence after " << out.iterations << " iterations, residual " << out.residual_norm;
        out.warnings.push_back(msg.str());
    }
    return out;
}

}  // namespace rfqc::cal
