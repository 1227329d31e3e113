// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"
#include "permsim/dag.hpp"
#include "permsim/permutation.hpp"

#include <cstdint>

namespace permsim {

/// How a candidate permutation is scored: Ready counts the zero-in-degree
/// vertices it frees from communication; Cascade counts the whole closure
/// of gates that become schedulable by repeatedly removing ready
/// communication-free vertices.
enum class CountMode { Ready, Cascade };

struct PassConfig {
    ShardConfig cfg;
    CountMode count_mode = CountMode::Cascade;
    DagRules dag_rules = DagRules::Full;
};

struct CompiledCircuit {
    Circuit circuit;  // gates plus inserted layout changes
    QubitPermutation final_sigma;
    std::uint64_t permutes_inserted = 0;
};

/// Greedy scheduling pass. Starting from the identity layout, repeatedly
/// schedules every ready gate that needs no communication under the
/// current permutation, then searches the m*(n-m) single local<->global
/// exchanges for the one freeing the most gates. If the best candidate
/// removes communication from at least one gate it is emitted as a layout
/// change; otherwise the earliest ready gate is scheduled with its
/// communication cost.
CompiledCircuit compile(const Circuit& c, const PassConfig& pc);

/// Number of gates the candidate layout frees from communication, per
/// pc.count_mode.
int score_candidate(const CircuitDag& dag, const QubitPermutation& sigma_prime,
                    const PassConfig& pc);

/// (gates needing communication under the evolving layout + layout-change
/// instructions) / gate count. Uncompiled circuits have no layout changes,
/// so their permutation stays identity throughout.
double comm_gate_fraction(const Circuit& c, const ShardConfig& cfg);

inline double comm_gate_fraction(const CompiledCircuit& cc, const ShardConfig& cfg) {
    return comm_gate_fraction(cc.circuit, cfg);
}

}  // namespace permsim
