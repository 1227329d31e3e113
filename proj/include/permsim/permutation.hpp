// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/gate.hpp"
#include "permsim/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace permsim {

/// Bijection from qubit ids to bit positions of the stored vector index.
/// Qubit q sits at position sigma(q); position p holds qubit qubit_at(p).
/// The inverse is cached so both directions are O(1).
class QubitPermutation {
public:
    QubitPermutation() = default;

    static QubitPermutation identity(int n);

    /// Builds from the image list [sigma(0), sigma(1), ...]. Throws if the
    /// list is not a bijection on {0..n-1}.
    static QubitPermutation from_image(std::vector<int> image);

    int size() const { return static_cast<int>(map_.size()); }

    /// Position of qubit q.
    int operator()(int qubit) const { return map_[static_cast<std::size_t>(qubit)]; }

    /// Qubit occupying position p (the inverse map).
    int qubit_at(int position) const { return inv_[static_cast<std::size_t>(position)]; }

    bool is_identity() const;

    /// New permutation with the occupants of two positions exchanged.
    QubitPermutation with_swapped_positions(int pos_a, int pos_b) const;

    const std::vector<int>& image() const { return map_; }
    const std::vector<int>& inverse_image() const { return inv_; }

    friend bool operator==(const QubitPermutation& a, const QubitPermutation& b) {
        return a.map_ == b.map_;
    }

private:
    std::vector<int> map_;  // map_[q] = sigma(q)
    std::vector<int> inv_;  // inv_[p] = sigma^-1(p)
};

/// Sharding geometry: 2^n amplitudes split into k = 2^(n-m) contiguous
/// shards of 2^m each. Positions < m are local, positions >= m are global.
struct ShardConfig {
    int n = 1;
    std::uint64_t num_shards = 1;  // k, a power of two
    int num_local = 1;             // m = n - log2(k)

    int num_global() const { return n - num_local; }
    std::uint64_t shard_size() const { return std::uint64_t{1} << num_local; }

    static ShardConfig make(int n, std::uint64_t k);
    static ShardConfig with_global_count(int n, int num_global);
};

/// Stored-vector component of basis state i under layout sigma:
/// j = sum_q i_q * 2^sigma(q).
BasisIndex amplitude_index(BasisIndex i, const QubitPermutation& sigma);

/// True iff sigma(q) < m.
bool is_local(int qubit, const QubitPermutation& sigma, const ShardConfig& cfg);

/// True iff every qubit the gate touches is local under sigma.
bool acts_on_local_qubits(const Gate& g, const QubitPermutation& sigma, const ShardConfig& cfg);

/// 1-qubit gates communicate iff their qubit is global; controlled gates
/// iff the target is global (control locality is irrelevant).
bool needs_communication(const Gate& g, const QubitPermutation& sigma, const ShardConfig& cfg);

/// Intermediates of the three-step reordering sigma -> sigma1 -> sigma2 -> sigma'.
/// Step 1 (sigma1 o sigma^-1) permutes only positions < m, step 2
/// (sigma2 o sigma1^-1) only positions >= m, and step 3 (sigma' o sigma2^-1)
/// is a product of disjoint transpositions, each exchanging one local and
/// one global position.
struct PermutationDecomposition {
    QubitPermutation sigma1;
    QubitPermutation sigma2;
    std::vector<std::pair<int, int>> pairs;  // (local position, global position)
};

PermutationDecomposition decompose_permutation(const QubitPermutation& sigma,
                                               const QubitPermutation& sigma_prime,
                                               const ShardConfig& cfg);

/// Which of the three steps are non-trivial; feeds the cost model.
struct PermutationDistance {
    bool local_changed = false;
    bool global_changed = false;
    int num_pairs = 0;
};

PermutationDistance permutation_distance(const QubitPermutation& sigma,
                                         const QubitPermutation& sigma_prime,
                                         const ShardConfig& cfg);

/// Applies a position permutation pi to the bits of an index:
/// bit p of j becomes bit pi[p] of the result.
BasisIndex permute_index_bits(BasisIndex j, const std::vector<int>& pi);

/// Position map of the transformation sigma -> sigma_to, i.e.
/// pi = sigma_to o sigma_from^-1 as a vector over positions.
std::vector<int> position_transform(const QubitPermutation& sigma_from,
                                    const QubitPermutation& sigma_to);

}  // namespace permsim
