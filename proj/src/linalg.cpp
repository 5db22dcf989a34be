#include "opmeans/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "opmeans/error.hpp"

namespace opmeans {

Matrix SpectralDecomposition::synthesize(const std::vector<double>& values) const {
  const std::size_t n = dim();
  Matrix out(n);
  // Only the upper triangle is accumulated; the lower one is its mirror.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) {
        acc += values[k] * vectors(i, k) * std::conj(vectors(j, k));
      }
      out(i, j) = acc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m.hermitian_part()) {
  if (!m.all_finite()) {
    throw Error(ErrorCode::InvariantViolation, "matrix has non-finite entries");
  }
  const double skew = (m - m.adjoint()).frobenius();
  if (skew > kHermitianTol * std::max(1.0, m.frobenius())) {
    throw Error(ErrorCode::InvariantViolation,
                "matrix is not Hermitian (‖A − A*‖_F = " + std::to_string(skew) + ")");
  }
}

HermitianMatrix HermitianMatrix::from_hermitian_part(const Matrix& m) {
  return HermitianMatrix(m.hermitian_part(), Trusted{});
}

namespace {

void check_positive(const SpectralDecomposition& spec) {
  const double lo = spec.eigenvalues.front();
  const double hi = spec.eigenvalues.back();
  if (!(lo > 0.0) || !(lo > kPositiveMargin * hi)) {
    throw Error(ErrorCode::InvariantViolation,
                "matrix is not positive with margin (λ_min = " + std::to_string(lo) +
                    ", λ_max = " + std::to_string(hi) + ")");
  }
}

void sort_ascending(SpectralDecomposition& spec) {
  const std::size_t n = spec.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.eigenvalues[a] < spec.eigenvalues[b];
  });
  if (std::is_sorted(order.begin(), order.end())) return;
  std::vector<double> values(n);
  Matrix vectors(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = spec.eigenvalues[order[k]];
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = spec.vectors(i, order[k]);
  }
  spec.eigenvalues = std::move(values);
  spec.vectors = std::move(vectors);
}

}  // namespace

PositiveMatrix::PositiveMatrix(HermitianMatrix h) : h_(std::move(h)), spec_(hermitian_eigen(h_)) {
  check_positive(spec_);
}

PositiveMatrix::PositiveMatrix(HermitianMatrix h, SpectralDecomposition spec)
    : h_(std::move(h)), spec_(std::move(spec)) {}

PositiveMatrix PositiveMatrix::from_spectrum(SpectralDecomposition spectrum) {
  sort_ascending(spectrum);
  check_positive(spectrum);
  Matrix m = spectrum.synthesize(spectrum.eigenvalues);
  return PositiveMatrix(HermitianMatrix::from_hermitian_part(m), std::move(spectrum));
}

InvertibleMatrix::InvertibleMatrix(const Matrix& m) : m_(m), inv_(invert(m)) {
  if (!m.all_finite()) {
    throw Error(ErrorCode::InvariantViolation, "matrix has non-finite entries");
  }
  smax_ = operator_norm(m_);
  // σ_min = 1/‖m⁻¹‖₂ stays accurate where sqrt(λ_min(m*m)) would not.
  smin_ = 1.0 / operator_norm(inv_);
  if (!(smin_ > 1.0 / kConditionCeiling * smax_)) {
    throw Error(ErrorCode::InvariantViolation,
                "condition number " + std::to_string(smax_ / smin_) + " exceeds 1e10");
  }
}

InvertibleMatrix InvertibleMatrix::inverse() const {
  return InvertibleMatrix(inv_, m_, 1.0 / smax_, 1.0 / smin_);
}

InvertibleMatrix InvertibleMatrix::adjoint() const {
  return InvertibleMatrix(m_.adjoint(), inv_.adjoint(), smin_, smax_);
}

namespace {

/// Runs the Jacobi sweeps on `a` in place, leaving the eigenvalues on its
/// diagonal. Rotations are accumulated into `v` when it is non-null.
void jacobi(Matrix& a, Matrix* v) {
  const std::size_t n = a.dim();
  const double threshold = kJacobiOffTol * a.frobenius();

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_diagonal() > threshold) {
    if (++sweep > kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep limit exceeded");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase_c = std::conj(apq / g);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // R = diag(1, conj(e))·[[c, s], [−s, c]] with e = a_pq/|a_pq|; A ← R*AR.
        const Complex rqp = -s * phase_c;
        const Complex rqq = c * phase_c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          const Complex np = c * akp + rqp * akq;
          const Complex nq = s * akp + rqq * akq;
          a(k, p) = np;
          a(p, k) = std::conj(np);
          a(k, q) = nq;
          a(q, k) = std::conj(nq);
        }
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (v == nullptr) continue;
        Matrix& vm = *v;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = vm(k, p);
          const Complex vkq = vm(k, q);
          vm(k, p) = c * vkp + rqp * vkq;
          vm(k, q) = s * vkp + rqq * vkq;
        }
      }
    }
  }
}

}  // namespace

SpectralDecomposition hermitian_eigen(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::identity(n);
  jacobi(a, &v);
  SpectralDecomposition spec{std::vector<double>(n), std::move(v)};
  for (std::size_t i = 0; i < n; ++i) spec.eigenvalues[i] = a(i, i).real();
  sort_ascending(spec);
  return spec;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  Matrix a = h.matrix();
  jacobi(a, nullptr);
  std::vector<double> ev(a.dim());
  for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_eigenvalue(const HermitianMatrix& h) { return hermitian_eigenvalues(h).front(); }

HermitianMatrix modulus_squared(const Matrix& c) {
  return HermitianMatrix::from_hermitian_part(c.adjoint() * c);
}

HermitianMatrix modulus(const Matrix& c) {
  const SpectralDecomposition spec = hermitian_eigen(modulus_squared(c));
  return HermitianMatrix::from_hermitian_part(
      spec.apply([](double lambda) { return std::sqrt(std::max(lambda, 0.0)); }));
}

HermitianMatrix congruence(const Matrix& c, const HermitianMatrix& a) {
  return HermitianMatrix::from_hermitian_part(c.adjoint() * a.matrix() * c);
}

InvertibleMatrix inverse(const InvertibleMatrix& c) { return c.inverse(); }

Matrix invert(const Matrix& c) {
  const std::size_t n = c.dim();
  Matrix a = c;
  Matrix inv = Matrix::identity(n);
  double largest = 0.0;
  for (const Complex& z : a.entries()) largest = std::max(largest, std::abs(z));
  const double floor = 1e-14 * largest;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = std::abs(a(r, col));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (!(best > floor) || best == 0.0) {
      throw Error(ErrorCode::SingularMatrix, "pivot below threshold in column " + std::to_string(col));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const Complex d = 1.0 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= d;
      inv(col, j) *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::string_view to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::StrictlyGreater: return "StrictlyGreater";
    case OrderVerdict::GreaterEqual: return "GreaterEqual";
    case OrderVerdict::Indefinite: return "Indefinite";
  }
  return "Indefinite";
}

OrderReport loewner_compare(const HermitianMatrix& a, const HermitianMatrix& b, double tol_rel) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "loewner_compare operands differ in order");
  }
  if (!(tol_rel >= 0.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "tolerance must be nonnegative");
  }
  const auto spread = [](const HermitianMatrix& h) {
    const auto ev = hermitian_eigenvalues(h);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
  };
  OrderReport r;
  r.tol = tol_rel;
  r.min_eig_diff = min_eigenvalue(HermitianMatrix::from_hermitian_part(a.matrix() - b.matrix()));
  r.scale = std::max(spread(a), spread(b));
  if (r.min_eig_diff > tol_rel * r.scale) {
    r.verdict = OrderVerdict::StrictlyGreater;
  } else if (r.min_eig_diff >= -tol_rel * r.scale) {
    r.verdict = OrderVerdict::GreaterEqual;
  } else {
    r.verdict = OrderVerdict::Indefinite;
  }
  return r;
}

double operator_norm(const Matrix& c) {
  const auto ev = hermitian_eigenvalues(modulus_squared(c));
  return std::sqrt(std::max(ev.back(), 0.0));
}

Norms norms(const Matrix& c) { return Norms{c.frobenius(), operator_norm(c)}; }

}  // namespace opmeans
