// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "iodir/channels.hpp"
#include "iodir/supermaps.hpp"

namespace iodir {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Stable substream seed for (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Matrix random_gaussian(int rows, int cols, Rng& rng);
Matrix random_unitary(int d, Rng& rng);
// rows >= cols; orthonormal columns.
Matrix random_isometry(int rows, int cols, Rng& rng);
Matrix random_hermitian(int d, Rng& rng);
Vector random_state(int d, Rng& rng);

// Mixture of random unitaries, hence bistochastic.
KrausChannel random_bistochastic(int d, Rng& rng, int terms = 3);

// Layout used by the single-slot generators: (A_I, A_O, B_it, B_ot, B_oc).
SetupOperator random_forward_setup(Rng& rng, int memory_dim = 2, int env_dim = 2);
SetupOperator random_backward_setup(Rng& rng, int memory_dim = 2, int env_dim = 2);
// p S_fwd + (1 - p) S_bwd with independent random combs.
SetupOperator random_definite_mixture(Rng& rng);
// Mixture of forward, backward and randomly dressed time-flip setups.
SetupOperator random_general_setup(Rng& rng);

}  // namespace iodir
