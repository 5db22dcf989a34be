#include "opmeans/funcalc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "opmeans/error.hpp"

namespace opmeans {

namespace {

void require_finite_exponent(double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::ParameterOutOfDomain, "exponent must be finite");
}

Matrix pairwise_sum(std::vector<Matrix>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  Matrix left = pairwise_sum(terms, lo, mid);
  left += pairwise_sum(terms, mid, hi);
  return left;
}

}  // namespace

void ContourSpec::validate() const {
  if (!(radius > 0.0) || !(center - radius > 0.0) || !std::isfinite(center) || !std::isfinite(radius)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "contour must satisfy radius > 0 and center − radius > 0");
  }
  if (nodes < 16 || !std::has_single_bit(nodes)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "contour nodes must be a power of two ≥ 16");
  }
  if (!(std::abs(shift) < 1.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "contour shift must lie in (−1, 1)");
  }
}

SpectrumBounds spectrum_bounds(const PositiveMatrix& a) { return {a.min_eig(), a.max_eig()}; }

PositiveMatrix real_power_spectral(const PositiveMatrix& a, double alpha) {
  require_finite_exponent(alpha);
  SpectralDecomposition spec = a.spectrum();
  for (double& lambda : spec.eigenvalues) lambda = std::pow(lambda, alpha);
  return PositiveMatrix::from_spectrum(std::move(spec));
}

HermitianMatrix real_power_hermitian(const PositiveMatrix& a, double alpha) {
  require_finite_exponent(alpha);
  return HermitianMatrix::from_hermitian_part(
      a.spectrum().apply([alpha](double lambda) { return std::pow(lambda, alpha); }));
}

ContourSpec default_contour(const SpectrumBounds& bounds, std::size_t nodes) {
  if (!(bounds.lo > 0.0) || !(bounds.hi >= bounds.lo)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "spectrum bounds must satisfy 0 < lo ≤ hi");
  }
  const double k = std::sqrt(bounds.lo * bounds.hi);
  const double s = std::sqrt(bounds.hi / bounds.lo);
  const double rho = std::max(std::sqrt((s - 1.0) / (s + 1.0)), 0.25);
  // T(u) = k(1 + ρu)/(1 − ρu) maps the unit circle onto the contour.
  const double left = k * (1.0 - rho) / (1.0 + rho);
  const double right = k * (1.0 + rho) / (1.0 - rho);
  ContourSpec c;
  c.center = 0.5 * (left + right);
  c.radius = 0.5 * (right - left);
  c.nodes = nodes;
  c.shift = (k - c.center) / c.radius;
  return c;
}

Matrix real_power_contour(const PositiveMatrix& a, double alpha, const ContourSpec& contour) {
  require_finite_exponent(alpha);
  contour.validate();
  const SpectrumBounds b = spectrum_bounds(a);
  const double left = contour.center - contour.radius;
  const double right = contour.center + contour.radius;
  if (b.lo - left < 0.05 * b.lo || right - b.hi < 0.05 * b.hi) {
    throw Error(ErrorCode::SpectrumNotEnclosed,
                "spectrum [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                    "] not enclosed with 5% margin by (" + std::to_string(left) + ", " +
                    std::to_string(right) + ")");
  }

  const std::size_t n = a.dim();
  const std::size_t count = contour.nodes;
  const double beta = contour.shift;
  // Nodes k and count − k are complex conjugates, and for Hermitian a the
  // term at z̄ is the adjoint of the term at z. Only the upper half of the
  // circle is evaluated; the two real-axis nodes are their own partners.
  std::vector<Matrix> terms;
  terms.reserve(count / 2 + 1);
  for (std::size_t k = 0; k <= count / 2; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    const Complex u = std::polar(1.0, angle);
    const Complex denom = 1.0 + beta * u;
    const Complex z = contour.center + contour.radius * (u + beta) / denom;
    // dz/ds = i·u·dz/du; the i cancels against the 1/(2πi) prefactor.
    const Complex jacobian = u * contour.radius * (1.0 - beta * beta) / (denom * denom);
    const Complex weight = std::exp(alpha * std::log(z)) * jacobian / static_cast<double>(count);
    Matrix resolvent(n);
    try {
      resolvent = invert(shifted(-1.0 * a.matrix(), z));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularMatrix) throw;
      throw Error(ErrorCode::ResolventSingular, "z − a singular at node " + std::to_string(k));
    }
    Matrix term = weight * std::move(resolvent);
    if (k == 0 || k == count / 2) {
      terms.push_back(term.hermitian_part());
    } else {
      terms.push_back(2.0 * term.hermitian_part());
    }
  }
  return pairwise_sum(terms, 0, terms.size());
}

}  // namespace opmeans
