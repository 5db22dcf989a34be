#include "opmeans/generate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "opmeans/error.hpp"

namespace opmeans {

namespace {

void require_args(std::size_t n, double cond_max) {
  if (n < 1 || n > kMaxDim) {
    throw Error(ErrorCode::BadDimension, "order " + std::to_string(n) + " outside [1, 16]");
  }
  if (!(cond_max >= 1.0 && cond_max <= 1e8)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "cond_max must lie in [1, 1e8]");
  }
}

}  // namespace

Matrix random_unitary(SplitMix64& rng, std::size_t n) {
  Matrix q(n);
  // Entries are drawn row-major; (re, im) share one standard deviation 1/√2.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      q(i, j) = Complex(re, im) * std::sqrt(0.5);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t prev = 0; prev < k; ++prev) {
      Complex dot{};
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, prev)) * q(i, k);
      for (std::size_t i = 0; i < n; ++i) q(i, k) -= dot * q(i, prev);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, k));
    norm = std::sqrt(norm);
    // R_kk = norm is already real and positive, so normalizing is the whole
    // phase fix for modified Gram–Schmidt.
    for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  return q;
}

PositiveMatrix random_pd_with_spectrum(SplitMix64& rng, std::span<const double> values) {
  const std::size_t n = values.size();
  Matrix u = random_unitary(rng, n);
  // A 1×1 unitary is a phase and cancels exactly; |u|² would not.
  if (n == 1) u = Matrix::identity(1);
  SpectralDecomposition spec{std::vector<double>(values.begin(), values.end()), std::move(u)};
  return PositiveMatrix::from_spectrum(std::move(spec));
}

InvertibleMatrix random_invertible(SplitMix64& rng, std::size_t n, double cond_max) {
  require_args(n, cond_max);
  const Matrix u = random_unitary(rng, n);
  const Matrix v = random_unitary(rng, n);
  Matrix us = u;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = rng.log_uniform(cond_max);
    for (std::size_t i = 0; i < n; ++i) us(i, j) *= s;
  }
  return InvertibleMatrix(us * v.adjoint());
}

PositiveMatrix random_pd(SplitMix64& rng, std::size_t n, double cond_max) {
  require_args(n, cond_max);
  std::vector<double> lambda(n);
  for (double& l : lambda) l = rng.log_uniform(cond_max);
  return random_pd_with_spectrum(rng, lambda);
}

InvertibleMatrix gen_random_invertible(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  return random_invertible(rng, n, cond_max);
}

PositiveMatrix gen_random_pd(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  return random_pd(rng, n, cond_max);
}

}  // namespace opmeans
