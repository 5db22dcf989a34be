#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "opmeans/linalg.hpp"

namespace opmeans {

/// Law-level tolerances. Identity residuals are relative Frobenius distances;
/// order and scalar checks are slacks divided by the instance scale.
struct Tolerances {
  double identity = 1e-8;
  double order = 1e-9;
  double scalar = 1e-12;
};

/// One law checked on one instance.
///
/// `residuals` holds every quantity that decides `pass`: identity residuals
/// (pass when ≤ tolerance) and normalized margins (pass when ≥ −tolerance).
/// `diagnostics` carries the intermediate constants a reader may want
/// (Δ, δ, m, M, scale, ...) and never affects `pass`. `margin` is the single
/// worst slack: the smallest normalized margin, or −residual for identities.
struct LawReport {
  std::string law_id;
  std::map<std::string, double> residuals;
  std::map<std::string, double> diagnostics;
  bool pass = true;
  double margin = 0.0;
  std::uint64_t instance_digest = 0;
};

nlohmann::json report_to_json(const LawReport& r);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a over the canonical (key-sorted, shortest-float) dump of `inputs`.
std::uint64_t instance_digest(const nlohmann::json& inputs);

// ---------------------------------------------------------------------------
// Operator identities
// ---------------------------------------------------------------------------

enum class DcdVariant { selfadjoint, star };

/// (dcd)^λ = dc^{1/2}(c^{1/2}d²c^{1/2})^{λ−1}c^{1/2}d for d ≻ 0 (selfadjoint), or
/// (dcd*)^λ = dc^{1/2}(c^{1/2}|d|²c^{1/2})^{λ−1}c^{1/2}d* for invertible d (star).
/// The selfadjoint variant throws VariantPreconditionViolated unless d ≻ 0.
LawReport check_dcd_identity(const PositiveMatrix& c, const InvertibleMatrix& d, double lambda,
                             DcdVariant variant, const Tolerances& tol = {});

/// b♯_{1−ν}a = a♯_ν b, any real ν.
LawReport check_geo_symmetry(const PositiveMatrix& a, const PositiveMatrix& b, double nu,
                             const Tolerances& tol = {});

/// (x⊛_ν y)⁻¹ = (x*)⁻¹⊛_ν(y*)⁻¹ and x⁻¹⊛_ν y⁻¹ = (x*⊛_ν y*)⁻¹.
LawReport check_inverse_identities(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                                   const Tolerances& tol = {});

/// x⊛_ν y against |x|²♯_ν|y|² and |y|²♯_{1−ν}|x|², each side evaluated by its
/// own definition.
LawReport check_representation(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                               const Tolerances& tol = {});

/// a^{1/2}⊛_ν b^{1/2} = a♯_ν b.
LawReport check_quadratic_extends_geometric(const PositiveMatrix& a, const PositiveMatrix& b,
                                            double nu, const Tolerances& tol = {});

/// a♯b = b♯a and a!b = b!a.
LawReport check_mean_symmetry(const PositiveMatrix& a, const PositiveMatrix& b,
                              const Tolerances& tol = {});

/// c*(a!b)c = (c*ac)!(c*bc) and c*(a♯b)c = (c*ac)♯(c*bc).
LawReport check_mean_congruence(const PositiveMatrix& a, const PositiveMatrix& b,
                                const InvertibleMatrix& c, const Tolerances& tol = {});

/// (a!_ν b)⁻¹ = a⁻¹∇_ν b⁻¹ and (a♯_ν b)⁻¹ = a⁻¹♯_ν b⁻¹, ν ∈ [0, 1].
LawReport check_mean_inversion(const PositiveMatrix& a, const PositiveMatrix& b, double nu,
                               const Tolerances& tol = {});

/// a^α a^β = a^{α+β}, (a^α)⁻¹ = a^{−α} and (a²)^{1/2} = a.
LawReport check_power_rules(const PositiveMatrix& a, double alpha, double beta,
                            const Tolerances& tol = {});

/// 0 ≺ b ⪯ a implies b^p ⪯ a^p for p ∈ [0, 1]. Throws ParameterOutOfDomain
/// when the hypothesis a ⪰ b fails.
LawReport check_loewner_heinz(const PositiveMatrix& a, const PositiveMatrix& b, double p,
                              const Tolerances& tol = {});

/// Contour-integral a^α against the spectral a^α on the default contour.
LawReport check_contour_oracle(const PositiveMatrix& a, double alpha, std::size_t nodes,
                               const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Order inequalities
// ---------------------------------------------------------------------------

enum class ChainKind { squared, half, positive_pair };

/// Arithmetic ⪰ quadratic/geometric ⪰ harmonic:
///   squared:       |x|²∇_ν|y|² ⪰ x⊛_ν y ⪰ |x|²!_ν|y|²
///   half:          x∇_ν^{1/2}y ⪰ x⊛_ν^{1/2}y ⪰ x!_ν^{1/2}y
///   positive_pair: a∇_ν b ⪰ a♯_ν b ⪰ a!_ν b with (a, b) = (|x|², |y|²)
/// Margins are λ_min of the two differences over max(‖left‖₂, ‖mid‖₂, ‖right‖₂).
LawReport check_hga_chain(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                          ChainKind kind, const Tolerances& tol = {});

/// (1−ν)‖x‖² + ν‖y‖² ≥ ‖(1−ν)|x|² + ν|y|²‖ ≥ ‖|yx⁻¹|^ν x‖².
LawReport check_norm_chain(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                           const Tolerances& tol = {});

enum class RefinementForm { general, midpoint, positive_pair, positive_pair_midpoint };

/// max{p/q, (1−p)/(1−q)}·gap(q) ⪰ gap(p) ⪰ min{p/q, (1−p)/(1−q)}·gap(q), where
/// gap(w) = |x|²∇_w|y|² − x⊛_w y (general) or a∇_w b − a♯_w b with
/// (a, b) = (|x|², |y|²) (positive_pair). The midpoint forms fix q = 1/2 and use
/// the coefficients 2max{p, 1−p} and 2min{p, 1−p}; `q` is then ignored.
LawReport check_operator_refinement(const InvertibleMatrix& x, const InvertibleMatrix& y, double p,
                                    double q, RefinementForm form, const Tolerances& tol = {});

enum class BoundedForm { delta, root, pair_delta, pair_root };

/// Bounds on gap = |x|²∇_ν|y|² − x⊛_ν y under m ⪯ |yx⁻¹| ⪯ M:
///   delta: Δ_ν(m², M²)|x|² ⪰ gap ⪰ δ_ν(m², M²)|x|² (plus the operator-norm
///          consequences as extra residuals)
///   root:  the same with the piecewise R·(·)² / r·(·)² coefficients,
///          R = max{ν, 1−ν}, r = min{ν, 1−ν}
///   pair_*: the same two forms for a∇_ν b − a♯_ν b with (a, b) = (|x|², |y|²)
///          and (k, K) = (m², M²)
/// m and M are the extreme eigenvalues of |yx⁻¹|, then divided and multiplied
/// by `widen` (≥ 1) to exercise non-tight hypotheses.
LawReport check_bounded_estimates(const InvertibleMatrix& x, const InvertibleMatrix& y, double nu,
                                  BoundedForm form, double widen = 1.0,
                                  const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Scalar checks
// ---------------------------------------------------------------------------

enum class ConvexFamily {
  exponential,         // exp(α·t), α ≠ 0, t ∈ ℝ
  power,               // t^α, α < 0 on t > 0 or α ≥ 1 on t ≥ 0
  negative_log,        // −ln t, t > 0
  affine_minus_power,  // 1 − α + α·t − t^α, α ∈ (0, 1), t ≥ 0
};

struct ConvexFunction {
  ConvexFamily family = ConvexFamily::power;
  double param = 2.0;

  /// Throws ParameterOutOfDomain for a parameter outside the family, and
  /// DomainViolation for t outside the function's domain.
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] bool in_domain(double t) const;
};

struct JensenInstance {
  std::vector<double> points;
  std::vector<double> weights;
  ConvexFunction function;

  /// Weights nonnegative summing to 1 within 1e-12, points in the domain.
  void validate() const;
};

/// J_n(f, x, p) = Σ p_i f(x_i) − f(Σ p_i x_i).
double jensen_functional(const JensenInstance& inst);

/// max_i(p_i/q_i)·J(q) ≥ J(p) ≥ min_i(p_i/q_i)·J(q). Both instances must share
/// points and function; throws ZeroDenominatorWeight if some q_i = 0.
LawReport check_jensen_bounds(const JensenInstance& inst_p, const JensenInstance& inst_q,
                              const Tolerances& tol = {});

enum class ScalarFamily { exp, exp_midpoint, power, power_midpoint, amgm_midpoint, amgm };

/// Two-point refinements of Young's inequality. For the exp families a and b
/// are arbitrary reals; otherwise they must be positive. `q` is ignored by the
/// midpoint families and `alpha` by the amgm families.
LawReport check_scalar_refinements(double a, double b, double p, double q, double alpha,
                                   ScalarFamily family, const Tolerances& tol = {});

std::string_view to_string(ConvexFamily f);
std::string_view to_string(ScalarFamily f);

// ---------------------------------------------------------------------------
// Replay by identifier
// ---------------------------------------------------------------------------

/// Every law identifier, in a fixed order. Each typed check above reports
/// under one of these ids, and evaluate_law accepts exactly these.
const std::vector<std::string>& law_ids();

/// Rebuilds the typed inputs of `law_id` from the JSON a check serializes
/// (the same object its digest is computed over) and runs the check.
/// Throws UnknownLawId or ParseError.
LawReport evaluate_law(std::string_view law_id, const nlohmann::json& inputs,
                       const Tolerances& tol = {});

/// evaluate_law for one law over many inputs. Matrix fields are parsed and
/// validated once and reused for as long as their JSON is unchanged, so a
/// sweep that only rebinds scalars pays for the matrices once.
class LawEvaluator {
public:
  /// Throws UnknownLawId.
  explicit LawEvaluator(std::string_view law_id);
  ~LawEvaluator();
  LawEvaluator(LawEvaluator&&) noexcept;
  LawEvaluator& operator=(LawEvaluator&&) noexcept;

  [[nodiscard]] const std::string& law_id() const;
  LawReport operator()(const nlohmann::json& inputs, const Tolerances& tol = {});

  struct Cache;

private:
  std::unique_ptr<Cache> cache_;
  std::size_t entry_ = 0;
};

}  // namespace opmeans
