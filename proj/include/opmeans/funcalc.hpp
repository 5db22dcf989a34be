#pragma once

#include <cstddef>

#include "opmeans/linalg.hpp"

namespace opmeans {

/// Closed circle {c + r·w : |w| = 1} in the open right half-plane, sampled at
/// `nodes` equispaced points of the parameter u on the unit circle through
/// the disk automorphism w = (u + shift)/(1 + shift·u). shift = 0 is the plain
/// uniform parameterization; a nonzero shift clusters nodes toward one end of
/// the circle without moving the circle itself.
struct ContourSpec {
  double center = 1.0;
  double radius = 0.5;
  std::size_t nodes = 256;
  double shift = 0.0;

  /// Throws ParameterOutOfDomain unless center − radius > 0, radius > 0,
  /// nodes ≥ 16 is a power of two and |shift| < 1.
  void validate() const;
};

inline constexpr std::size_t kDefaultContourNodes = 256;

struct SpectrumBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Extreme eigenvalues of a ≻ 0.
SpectrumBounds spectrum_bounds(const PositiveMatrix& a);

/// a^α = U·diag(λ_i^α)·U*. Throws InvariantViolation if the result falls
/// outside the PositiveMatrix margin (cond(a)^|α| ≥ 1e10).
PositiveMatrix real_power_spectral(const PositiveMatrix& a, double alpha);

/// Same spectral route, returned as a bare Hermitian matrix so intermediate
/// powers with large spread (e.g. (dcd*)^3) are not rejected.
HermitianMatrix real_power_hermitian(const PositiveMatrix& a, double alpha);

/// Contour enclosing [lo, hi] chosen so that, in the u-plane, the spectrum sits
/// inside |u| ≤ ρ and the branch cut (−∞, 0] of the principal power outside
/// |u| ≥ 1/ρ, with ρ² = (√(hi/lo) − 1)/(√(hi/lo) + 1) (ρ is floored at 1/4).
/// The trapezoid error then decays like ρ^N.
ContourSpec default_contour(const SpectrumBounds& bounds, std::size_t nodes = kDefaultContourNodes);

/// (1/2πi)∮ z^α (z − a)^{-1} dz with z^α the principal power, by the
/// trapezoid rule on `contour`. Resolvents come from pivoted elimination of
/// (z − a), never from an eigendecomposition. Terms are summed by pairwise
/// reduction in node order.
///
/// Throws SpectrumNotEnclosed unless lo − (c − r) ≥ 0.05·lo and
/// (c + r) − hi ≥ 0.05·hi, and ResolventSingular if z − a cannot be inverted.
Matrix real_power_contour(const PositiveMatrix& a, double alpha, const ContourSpec& contour);

}  // namespace opmeans
