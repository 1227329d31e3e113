// SPDX-License-Identifier: Apache-2.0
#include "permsim/dense_state.hpp"

#include "permsim/kernels.hpp"

#include <stdexcept>
#include <string>

namespace permsim {

DenseState::DenseState(int n) : n_(n) {
    if (n < 1 || n > 24) throw std::invalid_argument("dense state supports 1..24 qubits");
    amps_ = AmpVector::Zero(Eigen::Index{1} << n);
    amps_[0] = Complex(1, 0);
}

void DenseState::apply_gate(const Gate& g) {
    if (g.target >= n_ || (g.is_controlled() && g.control >= n_))
        throw std::invalid_argument("gate qubit out of range");
    const std::uint64_t ctrl_mask =
        g.is_controlled() ? (std::uint64_t{1} << g.control) : std::uint64_t{0};
    apply_within_buffer(amps_, g.target, g.matrix, ctrl_mask);
}

Complex DenseState::amplitude(BasisIndex i) const {
    if ((i >> n_) != 0) throw std::invalid_argument("basis index out of range");
    return amps_[static_cast<Eigen::Index>(i)];
}

DenseState dense_reference_run(const Circuit& c, int max_qubits) {
    c.validate();
    if (c.num_qubits > max_qubits)
        throw std::invalid_argument("dense reference limited to " +
                                    std::to_string(max_qubits) + " qubits");
    DenseState state(c.num_qubits);
    for (const Instruction& in : c.instructions) {
        if (in.is_gate()) state.apply_gate(in.gate());
        // Permute payloads were validated by c.validate(); the dense state
        // has no layout to change.
    }
    return state;
}

}  // namespace permsim
