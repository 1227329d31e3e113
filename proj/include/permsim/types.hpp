// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>

namespace permsim {

using Complex = std::complex<double>;

/// 2x2 complex block of a 1-qubit gate (for controlled kinds, the block
/// applied when the control is 1).
using GateMatrix = Eigen::Matrix2cd;

/// Dense buffer of amplitudes; one per shard, or the whole state.
using AmpVector = Eigen::VectorXcd;

/// Computational-basis index i, or a stored-vector component index j.
/// Positions are bit indices of such values.
using BasisIndex = std::uint64_t;

inline constexpr double kUnitaryTolerance = 1e-12;

inline constexpr std::size_t kAmplitudeBytes = sizeof(Complex);

}  // namespace permsim
