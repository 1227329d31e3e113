// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"
#include "permsim/permutation.hpp"

#include <cstdint>
#include <vector>

namespace permsim {

inline constexpr int kDefaultMaxFullSimQubits = 30;

/// Communication instrumentation. bytes_crossed totals the amplitude bytes
/// that move between shards; it is held as a double so counting-mode runs
/// at n ~ 50 cannot overflow (values stay exact below 2^53).
struct CommStats {
    std::uint64_t gates_local = 0;
    std::uint64_t gates_comm = 0;
    std::uint64_t permute_local_reorders = 0;
    std::uint64_t permute_global_reorders = 0;
    std::uint64_t permute_pair_exchanges = 0;
    double bytes_crossed = 0.0;

    friend bool operator==(const CommStats&, const CommStats&) = default;
};

/// 2^n amplitudes split into k contiguous shards of 2^m, indexed through
/// the current qubit permutation: basis state i lives at vector index
/// j = amplitude_index(i, sigma), i.e. shard j >> m, offset j & (2^m - 1).
///
/// A counting-only state allocates no amplitudes and updates CommStats
/// alone, which keeps n ~ 50 schedules measurable.
class ShardedState {
public:
    const ShardConfig& config() const { return cfg_; }
    const QubitPermutation& sigma() const { return sigma_; }
    const CommStats& stats() const { return stats_; }
    bool counting_only() const { return counting_; }

    void apply_gate(const Gate& g);

    /// Moves amplitudes so that sigma' governs indexing, via the three-step
    /// decomposition: in-shard reorder, shard relabel, pairwise exchange.
    void permute_qubits(const QubitPermutation& sigma_prime);

    void apply_instruction(const Instruction& in);

    /// Amplitude of basis state i regardless of the current layout.
    Complex read_amplitude(BasisIndex i) const;

    double norm_squared() const;

    /// All 2^n amplitudes in identity (basis-index) order.
    std::vector<Complex> dump_identity_order() const;

    const AmpVector& shard(std::uint64_t r) const { return shards_[r]; }

    friend ShardedState init_state(const ShardConfig& cfg, int max_qubits);
    friend ShardedState init_counting_state(const ShardConfig& cfg);

private:
    ShardedState(const ShardConfig& cfg, bool counting);

    ShardConfig cfg_;
    QubitPermutation sigma_;
    std::vector<AmpVector> shards_;  // empty in counting mode
    CommStats stats_;
    bool counting_ = false;
};

/// |0...0> with sigma = identity and zeroed counters.
ShardedState init_state(const ShardConfig& cfg, int max_qubits = kDefaultMaxFullSimQubits);

/// Counting-only twin: same counters, no amplitude storage.
ShardedState init_counting_state(const ShardConfig& cfg);

/// Applies every instruction of the circuit in order.
void run_circuit(ShardedState& state, const Circuit& c);

}  // namespace permsim
