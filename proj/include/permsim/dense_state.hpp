// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"

#include <cstdint>

namespace permsim {

inline constexpr int kMaxDenseQubits = 14;

/// Single-buffer reference state in identity layout. Gates apply by qubit
/// index directly; layout instructions do not exist at this level.
class DenseState {
public:
    explicit DenseState(int n);

    int num_qubits() const { return n_; }
    void apply_gate(const Gate& g);
    Complex amplitude(BasisIndex i) const;
    const AmpVector& amplitudes() const { return amps_; }
    double norm_squared() const { return amps_.squaredNorm(); }

private:
    int n_;
    AmpVector amps_;
};

/// Verification oracle: runs the circuit on a DenseState. Permute
/// instructions are layout-only and leave the quantum state untouched, so
/// they are validated and skipped; readback is always in identity order.
DenseState dense_reference_run(const Circuit& c, int max_qubits = kMaxDenseQubits);

}  // namespace permsim
