#include <algorithm>
#include <cmath>

#include "law_support.hpp"
#include "opmeans/error.hpp"
#include "opmeans/funcalc.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/means.hpp"

namespace opmeans {

using detail::mat;
using detail::min_eig_of_difference;
using detail::ReportBuilder;
using detail::safe_scale;
using detail::spectral_radius;

namespace {

nlohmann::json xy_inputs(const InvertibleMatrix& x, const InvertibleMatrix& y) {
  return nlohmann::json{{"x", mat(x.matrix())}, {"y", mat(y.matrix())}};
}

void require_weight(double nu, ErrorCode code) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw Error(code, "weight must lie in [0, 1]");
}

/// The pair (|x|², |y|²) with both squares validated once.
struct Squares {
  PositiveMatrix xx;
  PositiveMatrix yy;

  Squares(const InvertibleMatrix& x, const InvertibleMatrix& y)
      : xx(modulus_squared(x.matrix())), yy(modulus_squared(y.matrix())) {
    if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "x and y differ in order");
  }

  [[nodiscard]] double scale() const { return std::max(xx.max_eig(), yy.max_eig()); }
};

/// |x|²∇_w|y|² − x⊛_w y, or a∇_w b − a♯_w b on (a, b) = (|x|², |y|²).
Matrix young_gap(const InvertibleMatrix& x, const InvertibleMatrix& y, const Squares& sq, double w,
                 bool pair) {
  const Matrix arith = arithmetic_mean(sq.xx.hermitian(), sq.yy.hermitian(), w).matrix();
  const Matrix mid = pair ? geometric_mean(sq.xx, sq.yy, w).matrix()
                          : quadratic_geometric_mean(x, y, w).matrix();
  return arith - mid;
}

}  // namespace

LawReport check_hga_chain(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                          ChainKind kind, const Tolerances& tol) {
  require_weight(nu, ErrorCode::WeightOutOfRange);
  nlohmann::json inputs = xy_inputs(x, y);
  inputs["nu"] = nu;
  const char* id = kind == ChainKind::squared ? "hga-squared"
                   : kind == ChainKind::half  ? "hga-half"
                                              : "hga-positive-pair";
  ReportBuilder rb(id, inputs, tol);

  const Squares sq(x, y);
  Matrix left(x.dim()), mid(x.dim()), right(x.dim());
  switch (kind) {
    case ChainKind::squared:
      left = arithmetic_mean(sq.xx.hermitian(), sq.yy.hermitian(), nu).matrix();
      mid = quadratic_geometric_mean(x, y, nu).matrix();
      right = harmonic_mean(sq.xx, sq.yy, nu).matrix();
      break;
    case ChainKind::half:
      left = half_mean(x, y, nu, HalfKind::arithmetic).matrix();
      mid = half_mean(x, y, nu, HalfKind::quadratic).matrix();
      right = half_mean(x, y, nu, HalfKind::harmonic).matrix();
      break;
    case ChainKind::positive_pair:
      left = arithmetic_mean(sq.xx.hermitian(), sq.yy.hermitian(), nu).matrix();
      mid = geometric_mean(sq.xx, sq.yy, nu).matrix();
      right = harmonic_mean(sq.xx, sq.yy, nu).matrix();
      break;
  }
  const auto radius = [](const Matrix& m) {
    return spectral_radius(HermitianMatrix::from_hermitian_part(m));
  };
  const double scale = safe_scale(std::max({radius(left), radius(mid), radius(right)}));
  rb.order("upper", min_eig_of_difference(left, mid) / scale);
  rb.order("lower", min_eig_of_difference(mid, right) / scale);
  rb.info("scale", scale);
  return rb.finish();
}

LawReport check_norm_chain(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                           const Tolerances& tol) {
  require_weight(nu, ErrorCode::WeightOutOfRange);
  nlohmann::json inputs = xy_inputs(x, y);
  inputs["nu"] = nu;
  ReportBuilder rb("norm-chain", inputs, tol);

  const Squares sq(x, y);
  const double first = (1.0 - nu) * x.smax() * x.smax() + nu * y.smax() * y.smax();
  const double second =
      spectral_radius(arithmetic_mean(sq.xx.hermitian(), sq.yy.hermitian(), nu));
  const PositiveMatrix d(modulus_squared(y.matrix() * x.inverse_matrix()));
  const double t = operator_norm(real_power_hermitian(d, nu / 2.0).matrix() * x.matrix());
  const double third = t * t;

  const double scale = safe_scale(first);
  rb.order("upper", (first - second) / scale);
  rb.order("lower", (second - third) / scale);
  rb.info("weighted_norms", first);
  rb.info("norm_of_mean", second);
  rb.info("norm_of_power", third);
  return rb.finish();
}

LawReport check_operator_refinement(const InvertibleMatrix& x, const InvertibleMatrix& y, double p,
                                    double q, RefinementForm form, const Tolerances& tol) {
  require_weight(p, ErrorCode::ParameterOutOfDomain);
  const bool midpoint =
      form == RefinementForm::midpoint || form == RefinementForm::positive_pair_midpoint;
  const bool pair =
      form == RefinementForm::positive_pair || form == RefinementForm::positive_pair_midpoint;
  if (midpoint) {
    q = 0.5;
  } else if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "refinement needs q ∈ (0, 1)");
  }

  nlohmann::json inputs = xy_inputs(x, y);
  inputs["p"] = p;
  if (!midpoint) inputs["q"] = q;
  const char* id = form == RefinementForm::general    ? "refinement-general"
                   : form == RefinementForm::midpoint ? "refinement-midpoint"
                   : pair && !midpoint                ? "refinement-pair"
                                                      : "refinement-pair-midpoint";
  ReportBuilder rb(id, inputs, tol);

  // At q = 1/2 the ratio form gives p/q = 2p and (1−p)/(1−q) = 2(1−p)
  // exactly in binary64, so both spellings produce identical coefficients.
  const double hi = midpoint ? 2.0 * std::max(p, 1.0 - p) : std::max(p / q, (1.0 - p) / (1.0 - q));
  const double lo = midpoint ? 2.0 * std::min(p, 1.0 - p) : std::min(p / q, (1.0 - p) / (1.0 - q));

  const Squares sq(x, y);
  const Matrix gap_q = young_gap(x, y, sq, q, pair);
  const Matrix gap_p = p == q ? gap_q : young_gap(x, y, sq, p, pair);
  const double scale = safe_scale(sq.scale());
  rb.order("upper", min_eig_of_difference(hi * gap_q, gap_p) / scale);
  rb.order("lower", min_eig_of_difference(gap_p, lo * gap_q) / scale);
  rb.info("max_ratio", hi);
  rb.info("min_ratio", lo);
  rb.info("scale", scale);
  return rb.finish();
}

LawReport check_bounded_estimates(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                                  BoundedForm form, double widen, const Tolerances& tol) {
  require_weight(nu, ErrorCode::ParameterOutOfDomain);
  if (!(widen >= 1.0) || !std::isfinite(widen)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "widen factor must be ≥ 1");
  }
  const bool pair = form == BoundedForm::pair_delta || form == BoundedForm::pair_root;
  const bool root = form == BoundedForm::root || form == BoundedForm::pair_root;

  nlohmann::json inputs = xy_inputs(x, y);
  inputs["nu"] = nu;
  inputs["widen"] = widen;
  const char* id = form == BoundedForm::delta        ? "bounded-delta"
                   : form == BoundedForm::root       ? "bounded-root"
                   : form == BoundedForm::pair_delta ? "bounded-pair-delta"
                                                     : "bounded-pair-root";
  ReportBuilder rb(id, inputs, tol);

  // m² and M² are read off |yx⁻¹|² directly; squaring the extreme
  // eigenvalues of |yx⁻¹| would only add a rounding step.
  const PositiveMatrix d(modulus_squared(y.matrix() * x.inverse_matrix()));
  const double k = d.min_eig() / (widen * widen);
  const double big_k = d.max_eig() * (widen * widen);
  const double m = std::sqrt(k);
  const double big_m = std::sqrt(big_k);

  double upper_coef = 0.0;
  double lower_coef = 0.0;
  if (root) {
    const double big_r = std::max(nu, 1.0 - nu);
    const double r = std::min(nu, 1.0 - nu);
    if (big_m < 1.0) {
      upper_coef = big_r * (1.0 - m) * (1.0 - m);
      lower_coef = r * (1.0 - big_m) * (1.0 - big_m);
    } else if (1.0 < m) {
      upper_coef = big_r * (big_m - 1.0) * (big_m - 1.0);
      lower_coef = r * (m - 1.0) * (m - 1.0);
    } else {
      upper_coef = big_r * std::max((1.0 - m) * (1.0 - m), (big_m - 1.0) * (big_m - 1.0));
      lower_coef = 0.0;
    }
  } else if (nu > 0.0 && nu < 1.0) {
    const BoundPair b = bound_functions(k, big_k, nu);
    upper_coef = b.upper;
    lower_coef = b.lower;
  }  // at ν ∈ {0, 1} the gap vanishes identically and Δ = δ = 0

  const Squares sq(x, y);
  const Matrix gap = young_gap(x, y, sq, nu, pair);
  const Matrix& base = sq.xx.matrix();
  const double base_norm = sq.xx.max_eig();
  const double scale = safe_scale(std::max(upper_coef * base_norm, sq.scale()));

  rb.order("upper", min_eig_of_difference(upper_coef * base, gap) / scale);
  rb.order("lower", min_eig_of_difference(gap, lower_coef * base) / scale);

  if (form == BoundedForm::delta) {
    // Operator-norm consequences: ‖|x|²‖ = ‖x‖², and ‖|yx⁻¹|^ν x‖² = ‖x⊛_ν y‖.
    const double gap_norm = spectral_radius(HermitianMatrix::from_hermitian_part(gap));
    const double arith_norm =
        spectral_radius(arithmetic_mean(sq.xx.hermitian(), sq.yy.hermitian(), nu));
    const double power_norm = quadratic_geometric_mean(x, y, nu).max_eig();
    rb.order("norm_upper", (upper_coef * base_norm - gap_norm) / scale);
    rb.order("norm_lower", (gap_norm - lower_coef * base_norm) / scale);
    rb.order("norm_reverse_upper", (upper_coef * base_norm - (arith_norm - power_norm)) / scale);
    rb.order("norm_reverse_lower", (arith_norm - power_norm) / scale);
  }

  rb.info("m", m);
  rb.info("M", big_m);
  rb.info(root ? "upper_coefficient" : "Delta", upper_coef);
  rb.info(root ? "lower_coefficient" : "delta", lower_coef);
  rb.info("scale", scale);
  return rb.finish();
}

}  // namespace opmeans
