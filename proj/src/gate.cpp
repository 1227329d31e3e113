// SPDX-License-Identifier: Apache-2.0
#include "permsim/gate.hpp"

#include <cmath>
#include <stdexcept>

namespace permsim {

double unitarity_defect(const GateMatrix& u) {
    GateMatrix residual = u.adjoint() * u - GateMatrix::Identity();
    return residual.cwiseAbs().maxCoeff();
}

bool is_unitary(const GateMatrix& u, double tol) { return unitarity_defect(u) <= tol; }

GateMatrix hadamard_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    GateMatrix m;
    m << s, s, s, -s;
    return m;
}

GateMatrix pauli_y_matrix() {
    GateMatrix m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

GateMatrix pauli_x_matrix() {
    GateMatrix m;
    m << 0, 1, 1, 0;
    return m;
}

namespace {

void check_operands(int control, int target) {
    if (target < 0) throw std::invalid_argument("gate target must be non-negative");
    if (control >= 0 && control == target)
        throw std::invalid_argument("control equals target");
    if (control < -1) throw std::invalid_argument("gate control must be non-negative");
}

}  // namespace

Gate Gate::hadamard(int target) {
    check_operands(-1, target);
    return Gate{GateKind::H, target, -1, hadamard_matrix()};
}

Gate Gate::pauli_y(int target) {
    check_operands(-1, target);
    return Gate{GateKind::Y, target, -1, pauli_y_matrix()};
}

Gate Gate::cnot(int control, int target) {
    if (control < 0) throw std::invalid_argument("CNOT requires a control qubit");
    check_operands(control, target);
    return Gate{GateKind::Cnot, target, control, pauli_x_matrix()};
}

Gate Gate::one_qubit(int target, const GateMatrix& u) {
    check_operands(-1, target);
    if (!is_unitary(u)) throw std::invalid_argument("1-qubit matrix is not unitary");
    return Gate{GateKind::Generic1q, target, -1, u};
}

Gate Gate::controlled_one_qubit(int control, int target, const GateMatrix& u) {
    if (control < 0) throw std::invalid_argument("controlled gate requires a control qubit");
    check_operands(control, target);
    if (!is_unitary(u)) throw std::invalid_argument("controlled 1-qubit matrix is not unitary");
    return Gate{GateKind::GenericControlled1q, target, control, u};
}

std::string gate_mnemonic(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: return "H " + std::to_string(g.target);
        case GateKind::Y: return "Y " + std::to_string(g.target);
        case GateKind::Cnot:
            return "CNOT " + std::to_string(g.control) + " " + std::to_string(g.target);
        case GateKind::Generic1q: return "U1 " + std::to_string(g.target);
        case GateKind::GenericControlled1q:
            return "CU " + std::to_string(g.control) + " " + std::to_string(g.target);
    }
    return "?";
}

}  // namespace permsim
