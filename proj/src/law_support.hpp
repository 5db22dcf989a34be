#pragma once

// Internal helpers shared by the law implementations.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/linalg.hpp"
#include "opmeans/matrix_json.hpp"

namespace opmeans::detail {

/// Accumulates residuals into a LawReport and keeps `pass` and `margin`
/// consistent with them.
class ReportBuilder {
public:
  ReportBuilder(std::string law_id, const nlohmann::json& inputs, const Tolerances& tol)
      : tol_(tol) {
    r_.law_id = std::move(law_id);
    r_.instance_digest = instance_digest(inputs);
  }

  /// Relative residual of an identity; passes at ≤ tol.identity.
  void identity(const std::string& name, double residual) {
    record(name, residual, -residual, residual <= tol_.identity);
  }

  /// Normalized order slack; passes at ≥ −tol.order.
  void order(const std::string& name, double slack) {
    record(name, slack, slack, slack >= -tol_.order);
  }

  /// Normalized scalar slack; passes at ≥ −tol.scalar.
  void scalar(const std::string& name, double slack) {
    record(name, slack, slack, slack >= -tol_.scalar);
  }

  void info(const std::string& name, double value) { r_.diagnostics[name] = value; }

  LawReport finish() {
    if (!any_) r_.margin = 0.0;
    return std::move(r_);
  }

private:
  void record(const std::string& name, double value, double margin, bool ok) {
    r_.residuals[name] = value;
    // NaN fails both comparisons above and must also poison the margin.
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    r_.margin = any_ ? std::min(r_.margin, margin) : margin;
    any_ = true;
    r_.pass = r_.pass && ok;
  }

  Tolerances tol_;
  LawReport r_;
  bool any_ = false;
};

/// λ_min(a − b) for matrices that are Hermitian in exact arithmetic.
inline double min_eig_of_difference(const Matrix& a, const Matrix& b) {
  return min_eigenvalue(HermitianMatrix::from_hermitian_part(a - b));
}

/// Spectral radius of a Hermitian matrix.
inline double spectral_radius(const HermitianMatrix& h) {
  const auto ev = hermitian_eigenvalues(h);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

/// Guards a normalizer against an all-zero instance.
inline double safe_scale(double s) { return s > 0.0 ? s : 1.0; }

inline nlohmann::json mat(const Matrix& m) { return matrix_to_json(m); }

}  // namespace opmeans::detail
