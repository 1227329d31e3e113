// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace permsim {

/// Mixes amplitude pairs (j, j + 2^bit) by u inside one buffer. A pair
/// participates only when (j & ctrl_mask) == ctrl_mask; pass 0 for no
/// control. ctrl_mask must not include the target bit.
template <class Buffer>
void apply_within_buffer(Buffer& amps, int bit, const GateMatrix& u,
                         std::uint64_t ctrl_mask = 0) {
    const auto size = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t d = std::uint64_t{1} << bit;
    for (std::uint64_t base = 0; base < size; base += 2 * d) {
        for (std::uint64_t off = 0; off < d; ++off) {
            const std::uint64_t j = base + off;
            if ((j & ctrl_mask) != ctrl_mask) continue;
            const Complex a0 = amps[static_cast<Eigen::Index>(j)];
            const Complex a1 = amps[static_cast<Eigen::Index>(j + d)];
            amps[static_cast<Eigen::Index>(j)] = u(0, 0) * a0 + u(0, 1) * a1;
            amps[static_cast<Eigen::Index>(j + d)] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
}

/// Mixes lo[j] with hi[j] elementwise: the paired indices differ in a bit
/// that selects between the two buffers. ctrl_mask restricts to offsets
/// with all mask bits set.
template <class BufferA, class BufferB>
void apply_across_buffers(BufferA& lo, BufferB& hi, const GateMatrix& u,
                          std::uint64_t ctrl_mask = 0) {
    const auto size = static_cast<std::uint64_t>(lo.size());
    for (std::uint64_t j = 0; j < size; ++j) {
        if ((j & ctrl_mask) != ctrl_mask) continue;
        const Complex a0 = lo[static_cast<Eigen::Index>(j)];
        const Complex a1 = hi[static_cast<Eigen::Index>(j)];
        lo[static_cast<Eigen::Index>(j)] = u(0, 0) * a0 + u(0, 1) * a1;
        hi[static_cast<Eigen::Index>(j)] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

/// SWAP-like block exchange for a (local, global) transposition: exchanges
/// lo[off | 2^local_bit] with hi[off] for every offset with the local bit
/// clear. lo is the buffer whose global bit is 0, hi the partner.
template <class BufferA, class BufferB>
void exchange_local_global(BufferA& lo, BufferB& hi, int local_bit) {
    const auto size = static_cast<std::uint64_t>(lo.size());
    const std::uint64_t d = std::uint64_t{1} << local_bit;
    for (std::uint64_t base = 0; base < size; base += 2 * d) {
        for (std::uint64_t off = 0; off < d; ++off) {
            std::swap(lo[static_cast<Eigen::Index>(base + off + d)],
                      hi[static_cast<Eigen::Index>(base + off)]);
        }
    }
}

/// Rearranges one buffer under a bit permutation of its offset:
/// out[permuted(j)] = in[j]. `pi` maps bit p to bit pi[p] and must only
/// move bits below log2(size).
template <class Buffer>
void permute_buffer_bits(Buffer& amps, const std::vector<int>& pi) {
    const auto size = static_cast<std::uint64_t>(amps.size());
    Buffer scratch(amps.size());
    for (std::uint64_t j = 0; j < size; ++j) {
        std::uint64_t out = 0;
        for (std::size_t p = 0; p < pi.size(); ++p)
            out |= ((j >> p) & std::uint64_t{1}) << pi[p];
        scratch[static_cast<Eigen::Index>(out)] = amps[static_cast<Eigen::Index>(j)];
    }
    amps = std::move(scratch);
}

}  // namespace permsim
