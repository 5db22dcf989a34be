#pragma once

#include "opmeans/funcalc.hpp"
#include "opmeans/linalg.hpp"

namespace opmeans {

struct ScalarMeans {
  double arithmetic = 0.0;
  double geometric = 0.0;
  double harmonic = 0.0;
};

/// A_ν(a,b) = (1−ν)a + νb, G_ν(a,b) = a^{1−ν}b^ν, H_ν(a,b) = 1/A_ν(1/a, 1/b).
/// Throws NonPositiveInput unless a, b > 0.
ScalarMeans scalar_means(double a, double b, double nu);

/// (1−ν)a + νb. Any real ν.
HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b, double nu);

/// ((1−ν)a⁻¹ + νb⁻¹)⁻¹ for ν ∈ [0, 1].
PositiveMatrix harmonic_mean(const PositiveMatrix& a, const PositiveMatrix& b, double nu);

/// a^{1/2}(a^{-1/2} b a^{-1/2})^ν a^{1/2}. Any real ν.
PositiveMatrix geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double nu);

/// x*·d^ν·x with d = (x*)⁻¹ y* y x⁻¹ = |y x⁻¹|². Any real ν.
PositiveMatrix quadratic_geometric_mean(const InvertibleMatrix& x, const InvertibleMatrix& y,
                                        double nu);

enum class HalfKind { quadratic, arithmetic, harmonic };

/// Square root of the quadratic mean, or of the arithmetic / harmonic mean of
/// (|x|², |y|²). Arithmetic and harmonic kinds need ν ∈ [0, 1].
PositiveMatrix half_mean(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                         HalfKind kind);

/// f_ν(t) = 1 − ν + νt − t^ν = A_ν(1,t) − G_ν(1,t) for t ≥ 0 and ν ∈ (0, 1),
/// with 0^ν = 0. Throws WeightOutOfRange or DomainViolation.
double f_nu(double t, double nu);

struct BoundPair {
  double upper = 0.0;  // max of f_ν over [k, K]
  double lower = 0.0;  // min of f_ν over [k, K]
};

/// Extremes of f_ν on [k, K]. f_ν decreases on [0, 1] and increases on
/// [1, ∞), so the answer depends only on where 1 sits relative to the interval.
/// Throws BadInterval unless 0 < k ≤ K.
BoundPair bound_functions(double k, double big_k, double nu);

}  // namespace opmeans
