#pragma once

// Seeded generators for random test instances. All draws go through
// std::mt19937_64 so a seed reproduces the same instances on one toolchain.

#include <array>
#include <cstdint>
#include <random>

#include "qwass/linalg.hpp"

namespace qwass {

using Rng = std::mt19937_64;

/// Ginibre-distributed complex matrix with standard normal real and
/// imaginary parts.
ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Index dim, Rng& rng);

/// Hermitian matrix (G + G^*)/2 with Ginibre G.
HermitianMatrix random_hermitian(Index dim, Rng& rng);

/// Hilbert-Schmidt random mixed state G G^* / tr(G G^*).
DensityMatrix random_density(Index dim, Rng& rng);

/// Uniform point in the Bloch ball scaled to radius at most `max_radius`.
std::array<double, 3> random_bloch(Rng& rng, double max_radius = 1.0);

double uniform(Rng& rng, double lo, double hi);

}  // namespace qwass
