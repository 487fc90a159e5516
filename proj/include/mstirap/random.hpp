#pragma once

// Seeded random states and channels for property checks.

#include <cstdint>
#include <random>

#include "mstirap/dynamics.hpp"

namespace mstirap {

using Rng = std::mt19937_64;

/// Haar-random pure state from i.i.d. complex normal amplitudes.
QutritState random_state(Rng& rng);
/// G G^+ / Tr(G G^+) with G a complex Ginibre matrix; full rank almost surely.
DensityMatrix random_density_matrix(Rng& rng);
/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
Mat3 random_unitary(Rng& rng);

}  // namespace mstirap
