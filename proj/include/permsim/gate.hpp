// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/types.hpp"

#include <array>
#include <string>

namespace permsim {

enum class GateKind { H, Y, Cnot, Generic1q, GenericControlled1q };

/// Largest entry of |U†U - I|; zero for an exactly unitary matrix.
double unitarity_defect(const GateMatrix& u);

bool is_unitary(const GateMatrix& u, double tol = kUnitaryTolerance);

GateMatrix hadamard_matrix();
GateMatrix pauli_y_matrix();
GateMatrix pauli_x_matrix();  // the 1-qubit block of CNOT

/// A 1-qubit or controlled-1-qubit operation. `matrix` is the 2x2 block
/// acting on the target; for controlled kinds it applies when control = 1.
struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;  // -1 when absent
    GateMatrix matrix = hadamard_matrix();

    bool is_controlled() const { return control >= 0; }

    /// Target, then control when present.
    std::array<int, 2> qubits() const { return {target, control}; }
    int num_qubits() const { return is_controlled() ? 2 : 1; }

    static Gate hadamard(int target);
    static Gate pauli_y(int target);
    static Gate cnot(int control, int target);
    static Gate one_qubit(int target, const GateMatrix& u);
    static Gate controlled_one_qubit(int control, int target, const GateMatrix& u);

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.target == b.target && a.control == b.control &&
               a.matrix == b.matrix;
    }
};

/// "H 3", "CNOT 0 1", ... without the matrix payload; used in diagnostics
/// and DOT dumps.
std::string gate_mnemonic(const Gate& g);

}  // namespace permsim
