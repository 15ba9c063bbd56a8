#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace rfqc::device {

using Matrix4 = Eigen::Matrix4cd;
using State4 = Eigen::Vector4cd;
using Matrix2 = Eigen::Matrix2cd;

/// Phases of the sum-frequency exchange gate. Basis order |AB>: 00, 01, 10, 11.
struct GatePhases {
    double theta = 0.0;
    double phi_d = 0.0;
    double phi_01 = 0.0;
    double phi_10 = 0.0;
    double phi_zz = 0.0;

    double phi_11() const noexcept { return phi_01 + phi_10 + phi_zz; }
};

/// Exchange gate between |00> and |11>:
///   [ cos t                      0          0          i e^{i phi_D} sin t ]
///   [ 0                          e^{i p01}  0          0                    ]
///   [ 0                          0          e^{i p10}  0                    ]
///   [ i e^{i(p11 - phi_D)} sin t 0          0          e^{i p11} cos t      ]
Matrix4 bswap_unitary(const GatePhases& g);

/// Single-qubit phase gates: diag(1, e^{i phi_B}, e^{i phi_A}, e^{i(phi_A + phi_B)}).
Matrix4 z_phases(double phi_a, double phi_b);

/// Lift a single-qubit operator onto qubit A (first index) or B.
Matrix4 on_qubit_a(const Matrix2& u);
Matrix4 on_qubit_b(const Matrix2& u);

/// Hadamard.
Matrix2 hadamard();

/// Basis state |index>.
State4 basis_state(int index);

/// Apply `ops` in order (ops[0] first). Throws DomainError for an empty sequence.
State4 run_gate_sequence(std::span<const Matrix4> ops, const State4& initial);

/// Apply `block` `count` times.
State4 repeat_block(const Matrix4& block, int count, const State4& initial);

/// |amplitude|^2 per basis state.
Eigen::Vector4d populations(const State4& psi);

/// |<target|psi>|^2 for normalized states.
double state_fidelity(const State4& target, const State4& psi);

/// Tr(rho^2) of the pure-state density matrix |psi><psi| (normalized).
double purity(const State4& psi);

}  // namespace rfqc::device
