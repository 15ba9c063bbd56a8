#include "rfqc/gates.hpp"

#include <cmath>
#include <complex>
#include <unsupported/Eigen/KroneckerProduct>

#include "rfqc/errors.hpp"

namespace rfqc::device {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

Matrix4 bswap_unitary(const GatePhases& g)
{
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    const double p11 = g.phi_11();
    Matrix4 u = Matrix4::Zero();
    u(0, 0) = c;
    u(0, 3) = kI * std::polar(1.0, g.phi_d) * s;
    u(1, 1) = std::polar(1.0, g.phi_01);
    u(2, 2) = std::polar(1.0, g.phi_10);
    u(3, 0) = kI * std::polar(1.0, p11 - g.phi_d) * s;
    u(3, 3) = std::polar(1.0, p11) * c;
    return u;
}

Matrix4 z_phases(double phi_a, double phi_b)
{
    Matrix4 z = Matrix4::Zero();
    z(0, 0) = 1.0;
    z(1, 1) = std::polar(1.0, phi_b);
    z(2, 2) = std::polar(1.0, phi_a);
    z(3, 3) = std::polar(1.0, phi_a + phi_b);
    return z;
}

Matrix4 on_qubit_a(const Matrix2& u)
{
    return Eigen::kroneckerProduct(u, Matrix2::Identity()).eval();
}

Matrix4 on_qubit_b(const Matrix2& u)
{
    return Eigen::kroneckerProduct(Matrix2::Identity(), u).eval();
}

Matrix2 hadamard()
{
    Matrix2 h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
}

State4 basis_state(int index)
{
    if (index < 0 || index > 3) {
        throw DomainError("basis index must lie in 0..3");
    }
    State4 v = State4::Zero();
    v(index) = 1.0;
    return v;
}

State4 run_gate_sequence(std::span<const Matrix4> ops, const State4& initial)
{
    if (ops.empty()) {
        throw DomainError("gate sequence is empty");
    }
    State4 psi = initial;
    for (const auto& op : ops) {
        psi = op * psi;
    }
    return psi;
}

State4 repeat_block(const Matrix4& block, int count, const State4& initial)
{
    if (count < 1) {
        throw DomainError("block count must be positive");
    }
    State4 psi = initial;
    for (int i = 0; i < count; ++i) {
        psi = block * psi;
    }
    return psi;
}

Eigen::Vector4d populations(const State4& psi)
{
    return psi.cwiseAbs2();
}

double state_fidelity(const State4& target, const State4& psi)
{
    return std::norm(target.normalized().dot(psi.normalized()));
}

double purity(const State4& psi)
{
    const State4 v = psi.normalized();
    const Matrix4 rho = v * v.adjoint();
    return (rho * rho).trace().real();
}

}  // namespace rfqc::device
