#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace opmeans {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;

/// Dense square complex matrix, row-major. The universal carrier type: the
/// stronger wrappers in linalg.hpp (Hermitian, positive, invertible) all hold
/// one of these.
class Matrix {
public:
  /// Zero matrix of order `n` (n >= 1).
  explicit Matrix(std::size_t n);

  /// Row-wise literal, e.g. `Matrix({{1, 2}, {3, 4}})`. Throws
  /// DimensionMismatch if the rows are ragged or non-square.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::initializer_list<double> values);
  /// Takes ownership of `n*n` row-major entries.
  static Matrix from_entries(std::size_t n, std::vector<Complex> entries);

  [[nodiscard]] std::size_t dim() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  [[nodiscard]] std::span<const Complex> entries() const noexcept { return a_; }
  [[nodiscard]] std::span<Complex> entries() noexcept { return a_; }

  /// Conjugate transpose.
  [[nodiscard]] Matrix adjoint() const;
  /// (A + A*) / 2.
  [[nodiscard]] Matrix hermitian_part() const;
  [[nodiscard]] double frobenius() const;
  [[nodiscard]] bool all_finite() const;
  [[nodiscard]] Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t n_;
  std::vector<Complex> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(Matrix a, Complex s);

/// a + s·I
Matrix shifted(Matrix a, Complex s);

/// ‖a − b‖_F / ‖b‖_F, or the absolute distance when b is zero.
double relative_distance(const Matrix& a, const Matrix& b);

/// The composite selector of the arithmetic operation, for callers that
/// dispatch on a runtime kind.
enum class ArithmeticKind { add, sub, mul, scale, adjoint };

/// `b` is ignored for scale and adjoint; `alpha` is ignored except for scale.
Matrix matrix_arithmetic(const Matrix& a, const Matrix& b, ArithmeticKind kind,
                         Complex alpha = 1.0);

}  // namespace opmeans
