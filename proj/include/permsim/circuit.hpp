// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/gate.hpp"
#include "permsim/permutation.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace permsim {

/// One circuit step: either a gate or a layout change to the given
/// permutation.
struct Instruction {
    std::variant<Gate, QubitPermutation> op;

    Instruction(Gate g) : op(std::move(g)) {}
    Instruction(QubitPermutation p) : op(std::move(p)) {}

    bool is_gate() const { return std::holds_alternative<Gate>(op); }
    bool is_permute() const { return !is_gate(); }
    const Gate& gate() const { return std::get<Gate>(op); }
    const QubitPermutation& permutation() const { return std::get<QubitPermutation>(op); }

    friend bool operator==(const Instruction& a, const Instruction& b) = default;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Instruction> instructions;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {}

    void add(Gate g);
    void add(QubitPermutation p);

    std::size_t gate_count() const;
    bool gates_only() const;

    /// Throws std::invalid_argument on any out-of-range operand or
    /// wrong-sized permutation payload.
    void validate() const;

    friend bool operator==(const Circuit& a, const Circuit& b) = default;
};

/// Random-circuit family: each gate is a CNOT with probability p, otherwise
/// H or Y with probability (1-p)/2 each; operands uniform (CNOT operands
/// drawn without replacement). Deterministic per seed.
struct RandomCircuitSpec {
    int num_qubits = 2;
    int num_gates = 0;
    double two_qubit_probability = 0.0;  // p
    std::uint64_t seed = 0;
};

Circuit generate_random_circuit(const RandomCircuitSpec& spec);

}  // namespace permsim
