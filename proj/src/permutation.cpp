// SPDX-License-Identifier: Apache-2.0
#include "permsim/permutation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permsim {

QubitPermutation QubitPermutation::identity(int n) {
    if (n < 1) throw std::invalid_argument("permutation size must be positive");
    QubitPermutation p;
    p.map_.resize(static_cast<std::size_t>(n));
    std::iota(p.map_.begin(), p.map_.end(), 0);
    p.inv_ = p.map_;
    return p;
}

QubitPermutation QubitPermutation::from_image(std::vector<int> image) {
    const int n = static_cast<int>(image.size());
    if (n < 1) throw std::invalid_argument("permutation size must be positive");
    std::vector<int> inv(image.size(), -1);
    for (int q = 0; q < n; ++q) {
        const int p = image[static_cast<std::size_t>(q)];
        if (p < 0 || p >= n)
            throw std::invalid_argument("permutation image " + std::to_string(p) +
                                        " out of range for size " + std::to_string(n));
        if (inv[static_cast<std::size_t>(p)] != -1)
            throw std::invalid_argument("permutation is not a bijection: position " +
                                        std::to_string(p) + " repeated");
        inv[static_cast<std::size_t>(p)] = q;
    }
    QubitPermutation perm;
    perm.map_ = std::move(image);
    perm.inv_ = std::move(inv);
    return perm;
}

bool QubitPermutation::is_identity() const {
    for (int q = 0; q < size(); ++q)
        if (map_[static_cast<std::size_t>(q)] != q) return false;
    return true;
}

QubitPermutation QubitPermutation::with_swapped_positions(int pos_a, int pos_b) const {
    const int n = size();
    if (pos_a < 0 || pos_a >= n || pos_b < 0 || pos_b >= n)
        throw std::invalid_argument("swap position out of range");
    QubitPermutation out = *this;
    const int qa = inv_[static_cast<std::size_t>(pos_a)];
    const int qb = inv_[static_cast<std::size_t>(pos_b)];
    out.map_[static_cast<std::size_t>(qa)] = pos_b;
    out.map_[static_cast<std::size_t>(qb)] = pos_a;
    out.inv_[static_cast<std::size_t>(pos_a)] = qb;
    out.inv_[static_cast<std::size_t>(pos_b)] = qa;
    return out;
}

ShardConfig ShardConfig::make(int n, std::uint64_t k) {
    if (n < 1 || n > 62) throw std::invalid_argument("qubit count must be in [1, 62]");
    if (k == 0 || !std::has_single_bit(k))
        throw std::invalid_argument("shard count must be a power of two >= 1");
    const int num_global = std::countr_zero(k);
    const int m = n - num_global;
    if (m < 1 || m > n)
        throw std::invalid_argument("shard count " + std::to_string(k) +
                                    " leaves no local qubit for n = " + std::to_string(n));
    return ShardConfig{n, k, m};
}

ShardConfig ShardConfig::with_global_count(int n, int num_global) {
    if (num_global < 0 || num_global >= 64)
        throw std::invalid_argument("global qubit count out of range");
    return make(n, std::uint64_t{1} << num_global);
}

BasisIndex amplitude_index(BasisIndex i, const QubitPermutation& sigma) {
    const auto& image = sigma.image();
    const int n = sigma.size();
    if (n < 64 && (i >> n) != 0)
        throw std::invalid_argument("basis index out of range for " + std::to_string(n) +
                                    " qubits");
    BasisIndex j = 0;
    for (int q = 0; q < n; ++q)
        j |= ((i >> q) & BasisIndex{1}) << image[static_cast<std::size_t>(q)];
    return j;
}

bool is_local(int qubit, const QubitPermutation& sigma, const ShardConfig& cfg) {
    if (qubit < 0 || qubit >= cfg.n) throw std::invalid_argument("qubit out of range");
    return sigma(qubit) < cfg.num_local;
}

bool acts_on_local_qubits(const Gate& g, const QubitPermutation& sigma, const ShardConfig& cfg) {
    if (!is_local(g.target, sigma, cfg)) return false;
    return !g.is_controlled() || is_local(g.control, sigma, cfg);
}

bool needs_communication(const Gate& g, const QubitPermutation& sigma, const ShardConfig& cfg) {
    return !is_local(g.target, sigma, cfg);
}

namespace {

void check_same_size(const QubitPermutation& a, const QubitPermutation& b,
                     const ShardConfig& cfg) {
    if (a.size() != cfg.n || b.size() != cfg.n)
        throw std::invalid_argument("permutation size does not match shard config");
}

}  // namespace

PermutationDecomposition decompose_permutation(const QubitPermutation& sigma,
                                               const QubitPermutation& sigma_prime,
                                               const ShardConfig& cfg) {
    check_same_size(sigma, sigma_prime, cfg);
    const int n = cfg.n;
    const int m = cfg.num_local;

    // Qubits that change side fix the step-3 transpositions: pair the target
    // local positions of inbound qubits with the target global positions of
    // outbound ones, in increasing order.
    std::vector<int> to_local_targets;
    std::vector<int> to_global_targets;
    for (int q = 0; q < n; ++q) {
        const bool now_local = sigma(q) < m;
        const bool later_local = sigma_prime(q) < m;
        if (now_local && !later_local) to_global_targets.push_back(sigma_prime(q));
        if (!now_local && later_local) to_local_targets.push_back(sigma_prime(q));
    }
    std::sort(to_local_targets.begin(), to_local_targets.end());
    std::sort(to_global_targets.begin(), to_global_targets.end());

    std::vector<int> pair_map(static_cast<std::size_t>(n));
    std::iota(pair_map.begin(), pair_map.end(), 0);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(to_local_targets.size());
    for (std::size_t idx = 0; idx < to_local_targets.size(); ++idx) {
        const int local_pos = to_local_targets[idx];
        const int global_pos = to_global_targets[idx];
        pairs.emplace_back(local_pos, global_pos);
        pair_map[static_cast<std::size_t>(local_pos)] = global_pos;
        pair_map[static_cast<std::size_t>(global_pos)] = local_pos;
    }

    // sigma2 parks every qubit on its sigma-side so that step 3 alone takes
    // it home: sigma2(q) = pi3(sigma'(q)) with pi3 the involution above.
    std::vector<int> image2(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
        image2[static_cast<std::size_t>(q)] =
            pair_map[static_cast<std::size_t>(sigma_prime(q))];
    QubitPermutation sigma2 = QubitPermutation::from_image(std::move(image2));

    // sigma1 copies sigma2 on local positions and sigma on global ones, so
    // step 1 touches only locals and step 2 only globals.
    std::vector<int> image1(static_cast<std::size_t>(n));
    for (int p = 0; p < m; ++p)
        image1[static_cast<std::size_t>(sigma2.qubit_at(p))] = p;
    for (int p = m; p < n; ++p)
        image1[static_cast<std::size_t>(sigma.qubit_at(p))] = p;
    QubitPermutation sigma1 = QubitPermutation::from_image(std::move(image1));

    return PermutationDecomposition{std::move(sigma1), std::move(sigma2), std::move(pairs)};
}

PermutationDistance permutation_distance(const QubitPermutation& sigma,
                                         const QubitPermutation& sigma_prime,
                                         const ShardConfig& cfg) {
    const PermutationDecomposition dec = decompose_permutation(sigma, sigma_prime, cfg);
    PermutationDistance d;
    d.local_changed = !(dec.sigma1 == sigma);
    d.global_changed = !(dec.sigma2 == dec.sigma1);
    d.num_pairs = static_cast<int>(dec.pairs.size());
    return d;
}

BasisIndex permute_index_bits(BasisIndex j, const std::vector<int>& pi) {
    BasisIndex out = 0;
    for (std::size_t p = 0; p < pi.size(); ++p)
        out |= ((j >> p) & BasisIndex{1}) << pi[p];
    return out;
}

std::vector<int> position_transform(const QubitPermutation& sigma_from,
                                    const QubitPermutation& sigma_to) {
    const int n = sigma_from.size();
    if (sigma_to.size() != n)
        throw std::invalid_argument("permutation size mismatch");
    std::vector<int> pi(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
        pi[static_cast<std::size_t>(p)] = sigma_to(sigma_from.qubit_at(p));
    return pi;
}

}  // namespace permsim
