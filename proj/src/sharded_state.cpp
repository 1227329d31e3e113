// SPDX-License-Identifier: Apache-2.0
#include "permsim/sharded_state.hpp"

#include "permsim/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace permsim {

static_assert(kAmplitudeBytes == 16, "cost accounting assumes double-precision complex");

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

/// Shard-index image of r under a position permutation that moves only
/// global positions: global bit b is position m + b.
std::uint64_t shard_image(std::uint64_t r, const std::vector<int>& pi, int m, int num_global) {
    std::uint64_t out = 0;
    for (int b = 0; b < num_global; ++b)
        out |= ((r >> b) & std::uint64_t{1})
               << (pi[static_cast<std::size_t>(m + b)] - m);
    return out;
}

/// Number of shard indices displaced by the global-bit permutation:
/// 2^G minus one fixed index per constant assignment on each bit cycle.
double displaced_shard_count(const std::vector<int>& pi, int m, int num_global) {
    std::vector<char> seen(static_cast<std::size_t>(num_global), 0);
    int cycles = 0;
    for (int b = 0; b < num_global; ++b) {
        if (seen[static_cast<std::size_t>(b)]) continue;
        ++cycles;
        int cur = b;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = 1;
            cur = pi[static_cast<std::size_t>(m + cur)] - m;
        }
    }
    return pow2(num_global) - pow2(cycles);
}

}  // namespace

ShardedState::ShardedState(const ShardConfig& cfg, bool counting)
    : cfg_(cfg), sigma_(QubitPermutation::identity(cfg.n)), counting_(counting) {
    if (!counting_) {
        shards_.resize(cfg_.num_shards);
        for (auto& shard : shards_)
            shard = AmpVector::Zero(static_cast<Eigen::Index>(cfg_.shard_size()));
        shards_[0][0] = Complex(1, 0);
    }
}

ShardedState init_state(const ShardConfig& cfg, int max_qubits) {
    if (cfg.n > max_qubits)
        throw std::invalid_argument("full simulation limited to " +
                                    std::to_string(max_qubits) +
                                    " qubits; use counting mode beyond");
    return ShardedState(cfg, false);
}

ShardedState init_counting_state(const ShardConfig& cfg) { return ShardedState(cfg, true); }

void ShardedState::apply_gate(const Gate& g) {
    const int n = cfg_.n;
    const int m = cfg_.num_local;
    if (g.target >= n || (g.is_controlled() && g.control >= n))
        throw std::invalid_argument("gate qubit out of range");

    const int target_pos = sigma_(g.target);
    const bool comm = needs_communication(g, sigma_, cfg_);
    if (comm) {
        ++stats_.gates_comm;
        // Every participating pair co-locates both of its amplitudes, so
        // each pair moves two amplitudes across the boundary.
        stats_.bytes_crossed +=
            pow2(n - (g.is_controlled() ? 1 : 0)) * static_cast<double>(kAmplitudeBytes);
    } else {
        ++stats_.gates_local;
    }
    if (counting_) return;

    const int ctrl_pos = g.is_controlled() ? sigma_(g.control) : -1;
    if (target_pos < m) {
        if (ctrl_pos >= m) {
            // Global control, local target: only shards whose index has the
            // control bit set touch their amplitudes; no traffic.
            const std::uint64_t cbit = std::uint64_t{1} << (ctrl_pos - m);
            for (std::uint64_t r = 0; r < cfg_.num_shards; ++r)
                if (r & cbit) apply_within_buffer(shards_[r], target_pos, g.matrix);
        } else {
            const std::uint64_t mask =
                ctrl_pos >= 0 ? (std::uint64_t{1} << ctrl_pos) : std::uint64_t{0};
            for (auto& shard : shards_) apply_within_buffer(shard, target_pos, g.matrix, mask);
        }
    } else {
        const std::uint64_t tbit = std::uint64_t{1} << (target_pos - m);
        const std::uint64_t ctrl_shard_bit =
            ctrl_pos >= m ? (std::uint64_t{1} << (ctrl_pos - m)) : std::uint64_t{0};
        const std::uint64_t ctrl_offset_mask =
            (ctrl_pos >= 0 && ctrl_pos < m) ? (std::uint64_t{1} << ctrl_pos) : std::uint64_t{0};
        for (std::uint64_t r = 0; r < cfg_.num_shards; ++r) {
            if (r & tbit) continue;
            if ((r & ctrl_shard_bit) != ctrl_shard_bit) continue;
            apply_across_buffers(shards_[r], shards_[r | tbit], g.matrix, ctrl_offset_mask);
        }
    }
}

void ShardedState::permute_qubits(const QubitPermutation& sigma_prime) {
    if (sigma_prime.size() != cfg_.n)
        throw std::invalid_argument("permutation size does not match state");
    const int m = cfg_.num_local;
    const int num_global = cfg_.num_global();
    const PermutationDecomposition dec = decompose_permutation(sigma_, sigma_prime, cfg_);

    // Step 1: reorder local qubits inside each shard.
    if (!(dec.sigma1 == sigma_)) {
        ++stats_.permute_local_reorders;
        if (!counting_) {
            std::vector<int> pi = position_transform(sigma_, dec.sigma1);
            pi.resize(static_cast<std::size_t>(m));  // fixes all global positions
            for (auto& shard : shards_) permute_buffer_bits(shard, pi);
        }
    }

    // Step 2: reorder global qubits; in one address space this is a shard
    // relabel, charged as one full shard exchange per displaced shard.
    if (!(dec.sigma2 == dec.sigma1)) {
        ++stats_.permute_global_reorders;
        const std::vector<int> pi = position_transform(dec.sigma1, dec.sigma2);
        stats_.bytes_crossed += displaced_shard_count(pi, m, num_global) *
                                pow2(m) * static_cast<double>(kAmplitudeBytes);
        if (!counting_) {
            std::vector<AmpVector> relabeled(shards_.size());
            for (std::uint64_t r = 0; r < cfg_.num_shards; ++r)
                relabeled[shard_image(r, pi, m, num_global)] = std::move(shards_[r]);
            shards_ = std::move(relabeled);
        }
    }

    // Step 3: one SWAP-like block exchange per (local, global) pair.
    for (const auto& [local_pos, global_pos] : dec.pairs) {
        ++stats_.permute_pair_exchanges;
        stats_.bytes_crossed += pow2(cfg_.n - 1) * static_cast<double>(kAmplitudeBytes);
        if (!counting_) {
            const std::uint64_t gbit = std::uint64_t{1} << (global_pos - m);
            for (std::uint64_t r = 0; r < cfg_.num_shards; ++r) {
                if (r & gbit) continue;
                exchange_local_global(shards_[r], shards_[r | gbit], local_pos);
            }
        }
    }

    sigma_ = sigma_prime;
}

void ShardedState::apply_instruction(const Instruction& in) {
    if (in.is_gate())
        apply_gate(in.gate());
    else
        permute_qubits(in.permutation());
}

Complex ShardedState::read_amplitude(BasisIndex i) const {
    if (counting_) throw std::logic_error("counting-only state stores no amplitudes");
    const BasisIndex j = amplitude_index(i, sigma_);
    const std::uint64_t shard = j >> cfg_.num_local;
    const std::uint64_t offset = j & (cfg_.shard_size() - 1);
    return shards_[shard][static_cast<Eigen::Index>(offset)];
}

double ShardedState::norm_squared() const {
    if (counting_) throw std::logic_error("counting-only state stores no amplitudes");
    double total = 0.0;
    for (const auto& shard : shards_) total += shard.squaredNorm();
    return total;
}

std::vector<Complex> ShardedState::dump_identity_order() const {
    const BasisIndex size = BasisIndex{1} << cfg_.n;
    std::vector<Complex> out;
    out.reserve(size);
    for (BasisIndex i = 0; i < size; ++i) out.push_back(read_amplitude(i));
    return out;
}

void run_circuit(ShardedState& state, const Circuit& c) {
    c.validate();
    if (c.num_qubits != state.config().n)
        throw std::invalid_argument("circuit and state qubit counts differ");
    for (const Instruction& in : c.instructions) state.apply_instruction(in);
}

}  // namespace permsim
