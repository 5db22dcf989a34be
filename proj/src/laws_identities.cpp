#include <cmath>

#include "law_support.hpp"
#include "opmeans/error.hpp"
#include "opmeans/funcalc.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/means.hpp"

namespace opmeans {

using detail::mat;
using detail::ReportBuilder;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t instance_digest(const nlohmann::json& inputs) { return fnv1a64(inputs.dump()); }

nlohmann::json report_to_json(const LawReport& r) {
  nlohmann::json j;
  j["law_id"] = r.law_id;
  j["pass"] = r.pass;
  j["residuals"] = r.residuals;
  j["diagnostics"] = r.diagnostics;
  j["margin"] = r.margin;
  j["instance_digest"] = r.instance_digest;
  return j;
}

namespace {

PositiveMatrix square_of(const InvertibleMatrix& x) { return PositiveMatrix(modulus_squared(x.matrix())); }

/// (x⊛_ν y)⁻¹ from the factorization x⊛_ν y = w*w, w = |yx⁻¹|^ν x, as
/// w⁻¹(w⁻¹)*. Inverting the assembled product instead squares the condition
/// number that rounding in the congruence sees, which at ν outside [0, 1]
/// costs two to three digits.
Matrix inverse_of_quadratic_mean(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu) {
  const PositiveMatrix d(modulus_squared(y.matrix() * x.inverse_matrix()));
  const Matrix w_inv = x.inverse_matrix() * real_power_hermitian(d, -nu / 2.0).matrix();
  return HermitianMatrix::from_hermitian_part(w_inv * w_inv.adjoint()).matrix();
}

}  // namespace

LawReport check_dcd_identity(const PositiveMatrix& c, const InvertibleMatrix& d, double lambda,
                             DcdVariant variant, const Tolerances& tol) {
  const bool star = variant == DcdVariant::star;
  if (!star) {
    try {
      PositiveMatrix check{HermitianMatrix(d.matrix())};
    } catch (const Error& e) {
      throw Error(ErrorCode::VariantPreconditionViolated,
                  std::string("selfadjoint variant needs d ≻ 0 (") + e.what() + ")");
    }
  }
  const nlohmann::json inputs{{"c", mat(c.matrix())},
                              {"d", mat(d.matrix())},
                              {"lambda", lambda},
                              {"variant", star ? "star" : "selfadjoint"}};
  ReportBuilder rb(star ? "dcd-power-star" : "dcd-power-selfadjoint", inputs, tol);

  // For selfadjoint d, d* = d, so both variants share the same shape; only
  // the way |d|² and the outer factor are formed differs.
  const Matrix& dm = d.matrix();
  const Matrix d_star = star ? dm.adjoint() : dm;
  const HermitianMatrix d_sq =
      star ? modulus_squared(dm) : HermitianMatrix::from_hermitian_part(dm * dm);

  const PositiveMatrix outer(congruence(d_star, c.hermitian()));
  const Matrix left = real_power_hermitian(outer, lambda).matrix();

  const Matrix c_half = real_power_hermitian(c, 0.5).matrix();
  const PositiveMatrix inner(congruence(c_half, d_sq));
  const Matrix inner_pow = real_power_hermitian(inner, lambda - 1.0).matrix();
  const Matrix right = dm * c_half * inner_pow * c_half * d_star;

  rb.identity("residual", relative_distance(right, left));
  return rb.finish();
}

LawReport check_geo_symmetry(const PositiveMatrix& a, const PositiveMatrix& b, double nu,
                             const Tolerances& tol) {
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"nu", nu}};
  ReportBuilder rb("geometric-swap", inputs, tol);
  const Matrix left = geometric_mean(b, a, 1.0 - nu).matrix();
  const Matrix right = geometric_mean(a, b, nu).matrix();
  rb.identity("residual", relative_distance(left, right));
  return rb.finish();
}

LawReport check_inverse_identities(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                                   const Tolerances& tol) {
  const nlohmann::json inputs{{"x", mat(x.matrix())}, {"y", mat(y.matrix())}, {"nu", nu}};
  ReportBuilder rb("quadratic-inverse", inputs, tol);

  const Matrix inv_of_mean = inverse_of_quadratic_mean(x, y, nu);
  const Matrix mean_of_adj_inv =
      quadratic_geometric_mean(x.adjoint().inverse(), y.adjoint().inverse(), nu).matrix();
  rb.identity("inverse_of_mean", relative_distance(inv_of_mean, mean_of_adj_inv));

  const Matrix mean_of_inv = quadratic_geometric_mean(x.inverse(), y.inverse(), nu).matrix();
  const Matrix inv_of_adj_mean = inverse_of_quadratic_mean(x.adjoint(), y.adjoint(), nu);
  rb.identity("mean_of_inverses", relative_distance(mean_of_inv, inv_of_adj_mean));
  return rb.finish();
}

LawReport check_representation(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                               const Tolerances& tol) {
  const nlohmann::json inputs{{"x", mat(x.matrix())}, {"y", mat(y.matrix())}, {"nu", nu}};
  ReportBuilder rb("quadratic-representation", inputs, tol);
  const Matrix s = quadratic_geometric_mean(x, y, nu).matrix();
  const PositiveMatrix xx = square_of(x);
  const PositiveMatrix yy = square_of(y);
  rb.identity("geometric_form", relative_distance(s, geometric_mean(xx, yy, nu).matrix()));
  rb.identity("swapped_form", relative_distance(s, geometric_mean(yy, xx, 1.0 - nu).matrix()));
  return rb.finish();
}

LawReport check_quadratic_extends_geometric(const PositiveMatrix& a, const PositiveMatrix& b,
                                            double nu, const Tolerances& tol) {
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"nu", nu}};
  ReportBuilder rb("quadratic-extends-geometric", inputs, tol);
  const InvertibleMatrix x(real_power_hermitian(a, 0.5).matrix());
  const InvertibleMatrix y(real_power_hermitian(b, 0.5).matrix());
  rb.identity("residual", relative_distance(quadratic_geometric_mean(x, y, nu).matrix(),
                                            geometric_mean(a, b, nu).matrix()));
  return rb.finish();
}

LawReport check_mean_symmetry(const PositiveMatrix& a, const PositiveMatrix& b,
                              const Tolerances& tol) {
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}};
  ReportBuilder rb("mean-symmetry", inputs, tol);
  rb.identity("geometric", relative_distance(geometric_mean(a, b, 0.5).matrix(),
                                             geometric_mean(b, a, 0.5).matrix()));
  rb.identity("harmonic", relative_distance(harmonic_mean(a, b, 0.5).matrix(),
                                            harmonic_mean(b, a, 0.5).matrix()));
  return rb.finish();
}

LawReport check_mean_congruence(const PositiveMatrix& a, const PositiveMatrix& b,
                                const InvertibleMatrix& c, const Tolerances& tol) {
  const nlohmann::json inputs{
      {"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"c", mat(c.matrix())}};
  ReportBuilder rb("mean-congruence", inputs, tol);
  const Matrix& cm = c.matrix();
  const PositiveMatrix ca(congruence(cm, a.hermitian()));
  const PositiveMatrix cb(congruence(cm, b.hermitian()));
  rb.identity("geometric",
              relative_distance(congruence(cm, geometric_mean(a, b, 0.5).hermitian()).matrix(),
                                geometric_mean(ca, cb, 0.5).matrix()));
  rb.identity("harmonic",
              relative_distance(congruence(cm, harmonic_mean(a, b, 0.5).hermitian()).matrix(),
                                harmonic_mean(ca, cb, 0.5).matrix()));
  return rb.finish();
}

LawReport check_mean_inversion(const PositiveMatrix& a, const PositiveMatrix& b, double nu,
                               const Tolerances& tol) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange, "mean inversion needs ν ∈ [0, 1]");
  }
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"nu", nu}};
  ReportBuilder rb("mean-inversion", inputs, tol);
  const PositiveMatrix inv_a = real_power_spectral(a, -1.0);
  const PositiveMatrix inv_b = real_power_spectral(b, -1.0);
  rb.identity("harmonic",
              relative_distance(real_power_hermitian(harmonic_mean(a, b, nu), -1.0).matrix(),
                                arithmetic_mean(inv_a.hermitian(), inv_b.hermitian(), nu).matrix()));
  rb.identity("geometric",
              relative_distance(real_power_hermitian(geometric_mean(a, b, nu), -1.0).matrix(),
                                geometric_mean(inv_a, inv_b, nu).matrix()));
  return rb.finish();
}

LawReport check_power_rules(const PositiveMatrix& a, double alpha, double beta,
                            const Tolerances& tol) {
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"alpha", alpha}, {"beta", beta}};
  ReportBuilder rb("power-rules", inputs, tol);
  const Matrix a_alpha = real_power_hermitian(a, alpha).matrix();
  const Matrix a_beta = real_power_hermitian(a, beta).matrix();
  rb.identity("product",
              relative_distance(a_alpha * a_beta, real_power_hermitian(a, alpha + beta).matrix()));
  rb.identity("inverse",
              relative_distance(invert(a_alpha), real_power_hermitian(a, -alpha).matrix()));
  const PositiveMatrix sq(HermitianMatrix::from_hermitian_part(a.matrix() * a.matrix()));
  rb.identity("square_root", relative_distance(real_power_hermitian(sq, 0.5).matrix(), a.matrix()));
  return rb.finish();
}

LawReport check_loewner_heinz(const PositiveMatrix& a, const PositiveMatrix& b, double p,
                              const Tolerances& tol) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange, "Löwner–Heinz exponent must lie in [0, 1]");
  }
  if (!loewner_compare(a.hermitian(), b.hermitian(), tol.order).holds()) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Löwner–Heinz needs a ⪰ b");
  }
  const nlohmann::json inputs{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"p", p}};
  ReportBuilder rb("loewner-heinz", inputs, tol);
  const PositiveMatrix ap = real_power_spectral(a, p);
  const PositiveMatrix bp = real_power_spectral(b, p);
  const double scale = detail::safe_scale(std::max(ap.max_eig(), bp.max_eig()));
  rb.order("margin", detail::min_eig_of_difference(ap.matrix(), bp.matrix()) / scale);
  return rb.finish();
}

LawReport check_contour_oracle(const PositiveMatrix& a, double alpha, std::size_t nodes,
                               const Tolerances& tol) {
  const nlohmann::json inputs{
      {"a", mat(a.matrix())}, {"alpha", alpha}, {"nodes", static_cast<std::uint64_t>(nodes)}};
  ReportBuilder rb("contour-oracle", inputs, tol);
  const ContourSpec contour = default_contour(spectrum_bounds(a), nodes);
  const Matrix by_contour = real_power_contour(a, alpha, contour);
  rb.identity("residual",
              relative_distance(by_contour, real_power_hermitian(a, alpha).matrix()));
  rb.info("center", contour.center);
  rb.info("radius", contour.radius);
  return rb.finish();
}

}  // namespace opmeans
