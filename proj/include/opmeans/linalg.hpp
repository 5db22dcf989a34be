#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "opmeans/matrix.hpp"

namespace opmeans {

// Tolerances shared by the core types.
inline constexpr double kHermitianTol = 1e-12;     // ‖A − A*‖_F ≤ tol·max(1, ‖A‖_F)
inline constexpr double kPositiveMargin = 1e-10;   // min_eig > margin·max_eig
inline constexpr double kConditionCeiling = 1e10;  // smax / smin below this
inline constexpr double kOrderTol = 1e-9;          // default relative Loewner tolerance
inline constexpr double kIdentityTol = 1e-10;      // default relative identity residual
inline constexpr double kJacobiOffTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 60;

/// Eigenpairs of a Hermitian matrix: eigenvalues ascending, `vectors` holds the
/// matching orthonormal eigenvectors as columns.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix vectors;

  [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }

  /// U·diag(f(λ_i))·U*, Hermitian by construction.
  template <class Fn>
  [[nodiscard]] Matrix apply(Fn&& f) const {
    const std::size_t n = dim();
    std::vector<double> fv(n);
    for (std::size_t k = 0; k < n; ++k) fv[k] = f(eigenvalues[k]);
    return synthesize(fv);
  }

  /// U·diag(values)·U*.
  [[nodiscard]] Matrix synthesize(const std::vector<double>& values) const;
};

class HermitianMatrix {
public:
  /// Validates ‖m − m*‖_F ≤ 1e-12·max(1, ‖m‖_F) and finiteness, then stores the
  /// exact Hermitian part so downstream code sees a symmetric array.
  explicit HermitianMatrix(const Matrix& m);

  /// For results that are Hermitian in exact arithmetic (c*ac, U f(Λ) U*, ...):
  /// keeps (m + m*)/2 without the tolerance check.
  static HermitianMatrix from_hermitian_part(const Matrix& m);

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

/// Hermitian with strictly positive spectrum. The eigendecomposition computed
/// during validation is kept; real powers reuse it.
class PositiveMatrix {
public:
  /// Throws InvariantViolation unless min_eig > 1e-10·max_eig > 0.
  explicit PositiveMatrix(HermitianMatrix h);

  /// Builds U·diag(λ)·U* from a known decomposition without re-diagonalising.
  /// The eigenvalues are re-sorted ascending; the positivity margin is enforced.
  static PositiveMatrix from_spectrum(SpectralDecomposition spectrum);

  [[nodiscard]] const HermitianMatrix& hermitian() const noexcept { return h_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return h_.matrix(); }
  [[nodiscard]] const SpectralDecomposition& spectrum() const noexcept { return spec_; }
  [[nodiscard]] double min_eig() const noexcept { return spec_.eigenvalues.front(); }
  [[nodiscard]] double max_eig() const noexcept { return spec_.eigenvalues.back(); }
  [[nodiscard]] std::size_t dim() const noexcept { return h_.dim(); }

private:
  PositiveMatrix(HermitianMatrix h, SpectralDecomposition spec);
  HermitianMatrix h_;
  SpectralDecomposition spec_;
};

/// Invertible matrix with cached inverse and extreme singular values.
class InvertibleMatrix {
public:
  /// Throws SingularMatrix if elimination breaks down and InvariantViolation
  /// if the condition number is not below 1e10.
  explicit InvertibleMatrix(const Matrix& m);

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] const Matrix& inverse_matrix() const noexcept { return inv_; }
  [[nodiscard]] double smin() const noexcept { return smin_; }
  [[nodiscard]] double smax() const noexcept { return smax_; }
  [[nodiscard]] double condition() const noexcept { return smax_ / smin_; }
  [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

  [[nodiscard]] InvertibleMatrix inverse() const;
  [[nodiscard]] InvertibleMatrix adjoint() const;

private:
  InvertibleMatrix(Matrix m, Matrix inv, double smin, double smax)
      : m_(std::move(m)), inv_(std::move(inv)), smin_(smin), smax_(smax) {}
  Matrix m_;
  Matrix inv_;
  double smin_;
  double smax_;
};

/// Cyclic complex Jacobi. Throws NoConvergence after 60 sweeps.
SpectralDecomposition hermitian_eigen(const HermitianMatrix& h);

/// Ascending eigenvalues only; the same rotations without accumulating
/// eigenvectors.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const HermitianMatrix& h);

/// |c| = (c*c)^{1/2}; round-off negatives in σ(c*c) are clamped to zero.
HermitianMatrix modulus(const Matrix& c);

/// |c|² = c*c.
HermitianMatrix modulus_squared(const Matrix& c);

/// c*·a·c
HermitianMatrix congruence(const Matrix& c, const HermitianMatrix& a);

InvertibleMatrix inverse(const InvertibleMatrix& c);

/// Gauss-Jordan with partial pivoting. Throws SingularMatrix when a pivot
/// falls below 1e-14 of the largest entry.
Matrix invert(const Matrix& c);

enum class OrderVerdict { StrictlyGreater, GreaterEqual, Indefinite };

std::string_view to_string(OrderVerdict v);

/// Outcome of comparing a ⪰ b. `tol` is the single relative knob used both for
/// strictness and for the ⪰ test.
struct OrderReport {
  double min_eig_diff = 0.0;  // λ_min(a − b)
  double scale = 0.0;         // max(‖a‖₂, ‖b‖₂)
  double tol = kOrderTol;
  OrderVerdict verdict = OrderVerdict::Indefinite;

  /// a ⪰ b within tolerance (StrictlyGreater or GreaterEqual).
  [[nodiscard]] bool holds() const noexcept { return verdict != OrderVerdict::Indefinite; }
};

OrderReport loewner_compare(const HermitianMatrix& a, const HermitianMatrix& b,
                            double tol_rel = kOrderTol);

struct Norms {
  double frobenius = 0.0;
  double operator_norm = 0.0;
};

/// Frobenius norm and spectral norm sqrt(λ_max(c*c)).
Norms norms(const Matrix& c);

double operator_norm(const Matrix& c);

}  // namespace opmeans
