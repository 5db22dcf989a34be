#include "opmeans/means.hpp"

#include <algorithm>
#include <cmath>

#include "opmeans/error.hpp"

namespace opmeans {

namespace {

void require_finite(double nu) {
  if (!std::isfinite(nu)) throw Error(ErrorCode::WeightOutOfRange, "weight must be finite");
}

void require_unit_interval(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "weight must lie in [0, 1]");
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "mean operands differ in order");
}

}  // namespace

ScalarMeans scalar_means(double a, double b, double nu) {
  require_finite(nu);
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::NonPositiveInput, "scalar means need a, b > 0");
  return ScalarMeans{(1.0 - nu) * a + nu * b, std::pow(a, 1.0 - nu) * std::pow(b, nu),
                     1.0 / ((1.0 - nu) / a + nu / b)};
}

HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b, double nu) {
  require_finite(nu);
  require_same_dim(a.dim(), b.dim());
  return HermitianMatrix::from_hermitian_part((1.0 - nu) * a.matrix() + nu * b.matrix());
}

PositiveMatrix harmonic_mean(const PositiveMatrix& a, const PositiveMatrix& b, double nu) {
  require_unit_interval(nu);
  require_same_dim(a.dim(), b.dim());
  const Matrix inv_a = real_power_hermitian(a, -1.0).matrix();
  const Matrix inv_b = real_power_hermitian(b, -1.0).matrix();
  const PositiveMatrix sum(HermitianMatrix::from_hermitian_part((1.0 - nu) * inv_a + nu * inv_b));
  return real_power_spectral(sum, -1.0);
}

PositiveMatrix geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double nu) {
  require_finite(nu);
  require_same_dim(a.dim(), b.dim());
  const Matrix root = real_power_hermitian(a, 0.5).matrix();
  const Matrix inv_root = real_power_hermitian(a, -0.5).matrix();
  const PositiveMatrix inner(HermitianMatrix::from_hermitian_part(inv_root * b.matrix() * inv_root));
  const Matrix inner_nu = real_power_hermitian(inner, nu).matrix();
  return PositiveMatrix(HermitianMatrix::from_hermitian_part(root * inner_nu * root));
}

PositiveMatrix quadratic_geometric_mean(const InvertibleMatrix& x, const InvertibleMatrix& y,
                                        double nu) {
  require_finite(nu);
  require_same_dim(x.dim(), y.dim());
  const PositiveMatrix d(modulus_squared(y.matrix() * x.inverse_matrix()));
  const HermitianMatrix d_nu = real_power_hermitian(d, nu);
  return PositiveMatrix(congruence(x.matrix(), d_nu));
}

PositiveMatrix half_mean(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                         HalfKind kind) {
  switch (kind) {
    case HalfKind::quadratic:
      return real_power_spectral(quadratic_geometric_mean(x, y, nu), 0.5);
    case HalfKind::arithmetic: {
      require_unit_interval(nu);
      require_same_dim(x.dim(), y.dim());
      const PositiveMatrix m(
          arithmetic_mean(modulus_squared(x.matrix()), modulus_squared(y.matrix()), nu));
      return real_power_spectral(m, 0.5);
    }
    case HalfKind::harmonic: {
      require_unit_interval(nu);
      require_same_dim(x.dim(), y.dim());
      const PositiveMatrix xx(modulus_squared(x.matrix()));
      const PositiveMatrix yy(modulus_squared(y.matrix()));
      return real_power_spectral(harmonic_mean(xx, yy, nu), 0.5);
    }
  }
  throw Error(ErrorCode::ParameterOutOfDomain, "unknown half-mean kind");
}

double f_nu(double t, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw Error(ErrorCode::WeightOutOfRange, "f_nu needs ν ∈ (0, 1)");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainViolation, "f_nu needs t ≥ 0");
  return 1.0 - nu + nu * t - std::pow(t, nu);
}

BoundPair bound_functions(double k, double big_k, double nu) {
  if (!(k > 0.0) || !(big_k >= k) || !std::isfinite(big_k)) {
    throw Error(ErrorCode::BadInterval, "bound functions need 0 < k ≤ K");
  }
  const double at_k = f_nu(k, nu);
  const double at_big_k = f_nu(big_k, nu);
  if (big_k < 1.0) return {at_k, at_big_k};
  if (1.0 < k) return {at_big_k, at_k};
  return {std::max(at_k, at_big_k), 0.0};
}

}  // namespace opmeans
