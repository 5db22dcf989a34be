#pragma once

#include <cstdint>
#include <span>

#include "opmeans/linalg.hpp"
#include "opmeans/rng.hpp"

namespace opmeans {

/// Haar-distributed unitary: QR of a complex Gaussian matrix (modified
/// Gram–Schmidt) with the column phases fixed so that diag(R) > 0.
Matrix random_unitary(SplitMix64& rng, std::size_t n);

/// U·diag(s)·V* with U, V random unitaries and s_i log-uniform in
/// [1, cond_max]. Throws BadDimension for n outside [1, 16] and
/// ParameterOutOfDomain unless cond_max ∈ [1, 1e8].
InvertibleMatrix gen_random_invertible(std::uint64_t seed, std::size_t n, double cond_max);

/// U·diag(λ)·U* with λ_i log-uniform in [1, cond_max]. Same errors.
PositiveMatrix gen_random_pd(std::uint64_t seed, std::size_t n, double cond_max);

/// Stream-based variants used when one trial draws several matrices.
InvertibleMatrix random_invertible(SplitMix64& rng, std::size_t n, double cond_max);
PositiveMatrix random_pd(SplitMix64& rng, std::size_t n, double cond_max);

/// U·diag(values)·U* for a fresh random U; the spectrum is exactly `values`.
PositiveMatrix random_pd_with_spectrum(SplitMix64& rng, std::span<const double> values);

}  // namespace opmeans
