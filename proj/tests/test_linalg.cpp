#include <cmath>
#include <numbers>

#include "doctest.h"
#include "opmeans/error.hpp"
#include "opmeans/generate.hpp"
#include "opmeans/linalg.hpp"
#include "opmeans/matrix_json.hpp"
#include "test_support.hpp"

using namespace opmeans;
using testing::abs_err;
using testing::rel_err;

namespace {

const Complex I1{0.0, 1.0};

Matrix random_hermitian(SplitMix64& rng, std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m.hermitian_part();
}

Matrix random_square(SplitMix64& rng, std::size_t n) {
  Matrix m(n);
  for (Complex& z : m.entries()) z = Complex(rng.normal(), rng.normal());
  return m;
}

}  // namespace

TEST_CASE("diagonal arithmetic") {
  const Matrix a = Matrix::diagonal({1.0, 2.0});
  const Matrix b = Matrix::diagonal({3.0, 4.0});
  CHECK(matrix_arithmetic(a, b, ArithmeticKind::add) == Matrix::diagonal({4.0, 6.0}));
  CHECK(matrix_arithmetic(Matrix::diagonal({2.0, 3.0}), Matrix::diagonal({5.0, 7.0}),
                          ArithmeticKind::mul) == Matrix::diagonal({10.0, 21.0}));
  CHECK(matrix_arithmetic(b, a, ArithmeticKind::sub) == Matrix::diagonal({2.0, 2.0}));
  CHECK(matrix_arithmetic(a, a, ArithmeticKind::scale, Complex(0.0, 2.0)) ==
        Matrix({{Complex(0, 2), 0.0}, {0.0, Complex(0, 4)}}));
}

TEST_CASE("adjoint is the conjugate transpose") {
  const Matrix c({{0.0, I1}, {0.0, 0.0}});
  CHECK(matrix_arithmetic(c, c, ArithmeticKind::adjoint) == Matrix({{0.0, 0.0}, {-I1, 0.0}}));
}

TEST_CASE("mismatched dimensions are rejected") {
  const Matrix a = Matrix::identity(2);
  const Matrix b = Matrix::identity(3);
  for (const ArithmeticKind k : {ArithmeticKind::add, ArithmeticKind::sub, ArithmeticKind::mul}) {
    try {
      (void)matrix_arithmetic(a, b, k);
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
}

TEST_CASE("ragged literal and non-finite entries are rejected") {
  CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {3.0}}), Error);
  Matrix m = Matrix::identity(2);
  m(0, 1) = std::nan("");
  CHECK_THROWS_AS(InvertibleMatrix{m}, Error);
}

TEST_CASE("eigen of a diagonal matrix sorts and permutes") {
  const auto spec = hermitian_eigen(HermitianMatrix(Matrix::diagonal({3.0, 1.0})));
  CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spec.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-15));
  // First eigenvector must be ±e₂ up to phase.
  CHECK(std::abs(spec.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(spec.vectors(0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("eigen of [[2,1],[1,2]] matches the hand solution") {
  const auto spec = hermitian_eigen(HermitianMatrix(Matrix({{2.0, 1.0}, {1.0, 2.0}})));
  CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-14);
  CHECK(std::abs(spec.eigenvalues[1] - 3.0) < 1e-14);
  // Eigenvectors are determined up to a unit phase; compare |⟨u, v⟩|.
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex lo = std::conj(spec.vectors(0, 0)) * r - std::conj(spec.vectors(1, 0)) * r;
  const Complex hi = std::conj(spec.vectors(0, 1)) * r + std::conj(spec.vectors(1, 1)) * r;
  CHECK(std::abs(lo) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(hi) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Pauli-Y has eigenvalues -1 and 1") {
  const auto ev = hermitian_eigen(HermitianMatrix(Matrix({{0.0, -I1}, {I1, 0.0}}))).eigenvalues;
  CHECK(std::abs(ev[0] + 1.0) < 1e-14);
  CHECK(std::abs(ev[1] - 1.0) < 1e-14);
}

TEST_CASE("spectral decompositions reconstruct and stay unitary") {
  SplitMix64 rng(7);
  for (std::size_t n = 1; n <= 16; ++n) {
    const Matrix h = random_hermitian(rng, n);
    const auto spec = hermitian_eigen(HermitianMatrix(h));
    const Matrix& u = spec.vectors;
    CHECK(abs_err(u.adjoint() * u, Matrix::identity(n)) <= 1e-12 * static_cast<double>(n));
    CHECK(abs_err(spec.synthesize(spec.eigenvalues), h) <= 1e-11 * std::max(1.0, h.frobenius()));
    for (std::size_t i = 1; i < n; ++i) CHECK(spec.eigenvalues[i - 1] <= spec.eigenvalues[i]);
    const auto values = hermitian_eigenvalues(HermitianMatrix(h));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(values[i] - spec.eigenvalues[i]) <= 1e-13 * std::max(1.0, h.frobenius()));
  }
}

TEST_CASE("Hermitian and positive invariants are enforced") {
  CHECK_THROWS_AS(HermitianMatrix(Matrix({{1.0, 2.0}, {0.0, 1.0}})), Error);
  try {
    PositiveMatrix p{HermitianMatrix(Matrix::diagonal({1.0, -1.0}))};
    FAIL("expected InvariantViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvariantViolation);
  }
  // λ_min/λ_max = 1e-12 is below the 1e-10 strict-positivity margin.
  CHECK_THROWS_AS(PositiveMatrix{HermitianMatrix(Matrix::diagonal({1e-12, 1.0}))}, Error);
  CHECK_NOTHROW(PositiveMatrix{HermitianMatrix(Matrix::diagonal({1e-9, 1.0}))});
}

TEST_CASE("condition ceiling on invertible matrices") {
  CHECK_THROWS_AS(InvertibleMatrix{Matrix::diagonal({1e-11, 1.0})}, Error);
  const InvertibleMatrix ok{Matrix::diagonal({1e-9, 1.0})};
  CHECK(ok.condition() == doctest::Approx(1e9));
}

TEST_CASE("modulus examples") {
  const Matrix rotation({{0.0, -1.0}, {1.0, 0.0}});
  CHECK(abs_err(modulus(rotation).matrix(), Matrix::identity(2)) < 1e-14);
  CHECK(abs_err(modulus(Matrix::diagonal({-3.0, 2.0})).matrix(), Matrix::diagonal({3.0, 2.0})) <
        1e-14);
  // c*c = [[1,1],[1,2]]: det 1, trace 3, so √(c*c) = (c*c + I)/√5.
  const Matrix c({{1.0, 1.0}, {0.0, 1.0}});
  const Matrix want = (1.0 / std::sqrt(5.0)) * Matrix({{2.0, 1.0}, {1.0, 3.0}});
  CHECK(rel_err(modulus(c).matrix(), want) < 1e-14);
  CHECK(rel_err(modulus(c).matrix(), testing::sqrt_2x2(c.adjoint() * c)) < 1e-14);
}

TEST_CASE("modulus is positive and fixes positive matrices") {
  SplitMix64 rng(11);
  for (std::size_t n : {1, 2, 3, 5, 8}) {
    const Matrix c = random_square(rng, n);
    const HermitianMatrix m = modulus(c);
    const Matrix zero(n);
    CHECK(loewner_compare(m, HermitianMatrix(zero), kOrderTol).holds());
    const PositiveMatrix p = random_pd(rng, n, 100.0);
    CHECK(rel_err(modulus(p.matrix()).matrix(), p.matrix()) <= 1e-11);
  }
}

TEST_CASE("inverse examples") {
  const InvertibleMatrix d{Matrix::diagonal({2.0, 4.0})};
  CHECK(abs_err(inverse(d).matrix(), Matrix::diagonal({0.5, 0.25})) == 0.0);
  CHECK(abs_err(inverse(InvertibleMatrix{Matrix::identity(3)}).matrix(), Matrix::identity(3)) == 0.0);
  const InvertibleMatrix u{Matrix({{1.0, 1.0}, {0.0, 1.0}})};
  CHECK(abs_err(inverse(u).matrix(), Matrix({{1.0, -1.0}, {0.0, 1.0}})) < 1e-15);
}

TEST_CASE("inverse residual scales with the condition number") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const InvertibleMatrix c = gen_random_invertible(seed, 1 + seed % 8, 1e6);
    const Matrix prod = c.matrix() * inverse(c).matrix();
    CHECK(abs_err(prod, Matrix::identity(c.dim())) <= 1e-10 * c.condition());
  }
}

TEST_CASE("invert reports singular input") {
  try {
    (void)invert(Matrix({{1.0, 2.0}, {2.0, 4.0}}));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("loewner_compare verdicts") {
  const HermitianMatrix eye(Matrix::identity(2));
  const OrderReport strict = loewner_compare(HermitianMatrix(2.0 * Matrix::identity(2)), eye, 1e-9);
  CHECK(strict.verdict == OrderVerdict::StrictlyGreater);
  CHECK(strict.min_eig_diff == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(strict.scale == doctest::Approx(2.0));

  const OrderReport mixed = loewner_compare(HermitianMatrix(Matrix::diagonal({2.0, 0.5})), eye, 1e-9);
  CHECK(mixed.verdict == OrderVerdict::Indefinite);
  CHECK(mixed.min_eig_diff == doctest::Approx(-0.5));

  const OrderReport same = loewner_compare(eye, eye, 1e-9);
  CHECK(same.verdict == OrderVerdict::GreaterEqual);
  CHECK(same.min_eig_diff == 0.0);

  CHECK_THROWS_AS(loewner_compare(eye, HermitianMatrix(Matrix::identity(3)), 1e-9), Error);
}

TEST_CASE("loewner_compare is antisymmetric beyond the tolerance band") {
  SplitMix64 rng(23);
  const double tol = 1e-9;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 6;
    const HermitianMatrix a(random_hermitian(rng, n));
    const HermitianMatrix b(random_hermitian(rng, n));
    const OrderReport ab = loewner_compare(a, b, tol);
    if (ab.verdict == OrderVerdict::StrictlyGreater && ab.min_eig_diff > 2.0 * tol * ab.scale) {
      CHECK_FALSE(loewner_compare(b, a, tol).holds());
    }
  }
}

TEST_CASE("congruence preserves the order") {
  SplitMix64 rng(29);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 8;
    const PositiveMatrix b = random_pd(rng, n, 100.0);
    const PositiveMatrix extra = random_pd(rng, n, 100.0);
    const HermitianMatrix a = HermitianMatrix::from_hermitian_part(b.matrix() + extra.matrix());
    const PositiveMatrix c = random_pd(rng, n, 100.0);
    const OrderReport r =
        loewner_compare(congruence(c.matrix(), a), congruence(c.matrix(), b.hermitian()), 1e-9);
    CHECK(r.holds());
  }
}

TEST_CASE("norm examples") {
  const Norms d = norms(Matrix::diagonal({3.0, -4.0}));
  CHECK(d.frobenius == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(d.operator_norm == doctest::Approx(4.0).epsilon(1e-15));
  const Norms id = norms(Matrix::identity(3));
  CHECK(id.frobenius == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(id.operator_norm == doctest::Approx(1.0).epsilon(1e-15));
  const Norms nil = norms(Matrix({{0.0, 2.0}, {0.0, 0.0}}));
  CHECK(nil.frobenius == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(nil.operator_norm == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("operator norm satisfies the C*-identity") {
  SplitMix64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const Matrix c = random_square(rng, 1 + t % 10);
    const double op = operator_norm(c);
    CHECK(std::abs(operator_norm(c.adjoint() * c) - op * op) <= 1e-10 * op * op);
  }
}

TEST_CASE("matrix JSON round-trips bit-exactly") {
  SplitMix64 rng(37);
  const Matrix m = random_square(rng, 5);
  const nlohmann::json j = matrix_to_json(m);
  CHECK(j["dim"] == 5);
  CHECK(matrix_from_json(nlohmann::json::parse(j.dump())) == m);
}

TEST_CASE("malformed matrix JSON is a ParseError") {
  for (const char* text : {R"({"dim": 2})", R"({"dim": 1, "entries": [[1]]})",
                           R"({"dim": 2, "entries": [[[1,0],[0,0]]]})", R"([1, 2])"}) {
    try {
      (void)matrix_from_json(nlohmann::json::parse(text));
      FAIL("expected ParseError for " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}
