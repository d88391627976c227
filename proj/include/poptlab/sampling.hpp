// sampling.hpp — Seeded random vectors, unitaries, and two-qubit state corpora.
#pragma once

#include <cstdint>
#include <random>

#include "poptlab/operators.hpp"

namespace poptlab {

// Derives an independent substream seed from a base seed and an index
// (splitmix64 finalizer), so parallel draws never share a generator state.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Haar-ish unit vector: normalized complex Gaussian entries.
Vector random_unit_vector(int dim, std::mt19937_64& rng);

// Haar unitary: QR of a complex Gaussian matrix with phases fixed so the
// diagonal of R is positive.
UnitaryOperator random_unitary(int dim, std::mt19937_64& rng);

// GUE-style Hermitian operator with O(1) entries.
HermitianOperator random_hermitian(const SystemShape& shape, std::mt19937_64& rng);

// Unit-trace PSD state from a Ginibre factor G: GG†/Tr(GG†).
HermitianOperator random_density(const SystemShape& shape, std::mt19937_64& rng);

// Rank-one unit-trace state on the given shape.
HermitianOperator random_pure_density(const SystemShape& shape, std::mt19937_64& rng);

// Two-qubit product-test-positive state with maximally mixed marginals:
// the second-factor partial transpose of a locally rotated maximally entangled
// state, mixed with 1/4 at a weight drawn from [0, lambdaMax].  Generically not
// PSD for small weights.
HermitianOperator random_popt_witness(std::mt19937_64& rng, double lambdaMax = 0.5);

// Random convex mixture of locally rotated Bell states: PSD with maximally
// mixed marginals.
HermitianOperator random_bell_mixture(std::mt19937_64& rng);

}  // namespace poptlab
