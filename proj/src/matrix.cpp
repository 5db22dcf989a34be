#include "opmeans/matrix.hpp"

#include <cmath>
#include <string>

#include "opmeans/error.hpp"

namespace opmeans {

namespace {

void require_dim(std::size_t n) {
  if (n < 1 || n > kMaxDim) {
    throw Error(ErrorCode::BadDimension,
                "matrix order " + std::to_string(n) + " outside [1, 16]");
  }
}

void require_same(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n) {
  require_dim(n);
  a_.assign(n * n, Complex{});
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  require_dim(n_);
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) {
      throw Error(ErrorCode::DimensionMismatch, "matrix literal is not square");
    }
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Matrix Matrix::from_entries(std::size_t n, std::vector<Complex> entries) {
  Matrix m(n);
  if (entries.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");
  }
  m.a_ = std::move(entries);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::hermitian_part() const {
  Matrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out(i, i) = (*this)(i, i).real();
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Complex v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

double Matrix::frobenius() const {
  double ssq = 0.0;
  for (const Complex& z : a_) ssq += std::norm(z);
  return std::sqrt(ssq);
}

bool Matrix::all_finite() const {
  for (const Complex& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Complex Matrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same(*this, other);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same(*this, other);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : a_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix shifted(Matrix a, Complex s) {
  for (std::size_t i = 0; i < a.dim(); ++i) a(i, i) += s;
  return a;
}

double relative_distance(const Matrix& a, const Matrix& b) {
  const double diff = (a - b).frobenius();
  const double ref = b.frobenius();
  return ref > 0.0 ? diff / ref : diff;
}

Matrix matrix_arithmetic(const Matrix& a, const Matrix& b, ArithmeticKind kind, Complex alpha) {
  switch (kind) {
    case ArithmeticKind::add: return a + b;
    case ArithmeticKind::sub: return a - b;
    case ArithmeticKind::mul: return a * b;
    case ArithmeticKind::scale: return alpha * a;
    case ArithmeticKind::adjoint: return a.adjoint();
  }
  return a;
}

}  // namespace opmeans
