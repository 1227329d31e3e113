// SPDX-License-Identifier: Apache-2.0
#include "permsim/circuit.hpp"

#include "permsim/random.hpp"

#include <stdexcept>
#include <string>

namespace permsim {

void Circuit::add(Gate g) { instructions.emplace_back(std::move(g)); }

void Circuit::add(QubitPermutation p) { instructions.emplace_back(std::move(p)); }

std::size_t Circuit::gate_count() const {
    std::size_t count = 0;
    for (const Instruction& in : instructions)
        if (in.is_gate()) ++count;
    return count;
}

bool Circuit::gates_only() const {
    for (const Instruction& in : instructions)
        if (in.is_permute()) return false;
    return true;
}

void Circuit::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("circuit must have at least one qubit");
    for (const Instruction& in : instructions) {
        if (in.is_gate()) {
            const Gate& g = in.gate();
            if (g.target < 0 || g.target >= num_qubits)
                throw std::invalid_argument("gate target " + std::to_string(g.target) +
                                            " out of range");
            if (g.is_controlled() && (g.control < 0 || g.control >= num_qubits))
                throw std::invalid_argument("gate control " + std::to_string(g.control) +
                                            " out of range");
        } else if (in.permutation().size() != num_qubits) {
            throw std::invalid_argument("permutation size does not match qubit count");
        }
    }
}

Circuit generate_random_circuit(const RandomCircuitSpec& spec) {
    const int n = spec.num_qubits;
    const double p = spec.two_qubit_probability;
    if (n < 1) throw std::invalid_argument("random circuit needs at least one qubit");
    if (spec.num_gates < 0) throw std::invalid_argument("gate count must be non-negative");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability must be in [0, 1]");
    if (p > 0.0 && n < 2)
        throw std::invalid_argument("2-qubit gates require at least two qubits");

    SeededRng rng(spec.seed);
    Circuit c(n);
    c.instructions.reserve(static_cast<std::size_t>(spec.num_gates));
    const auto nq = static_cast<std::uint64_t>(n);
    for (int i = 0; i < spec.num_gates; ++i) {
        if (rng.next_unit() < p) {
            const int control = static_cast<int>(rng.next_below(nq));
            int target = static_cast<int>(rng.next_below(nq - 1));
            if (target >= control) ++target;
            c.add(Gate::cnot(control, target));
        } else {
            const bool pick_y = rng.next_below(2) == 1;
            const int q = static_cast<int>(rng.next_below(nq));
            c.add(pick_y ? Gate::pauli_y(q) : Gate::hadamard(q));
        }
    }
    return c;
}

}  // namespace permsim
