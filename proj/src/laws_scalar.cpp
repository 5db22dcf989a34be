#include <algorithm>
#include <cmath>
#include <limits>

#include "law_support.hpp"
#include "opmeans/error.hpp"
#include "opmeans/laws.hpp"

namespace opmeans {

using detail::ReportBuilder;
using detail::safe_scale;

std::string_view to_string(ConvexFamily f) {
  switch (f) {
    case ConvexFamily::exponential: return "exponential";
    case ConvexFamily::power: return "power";
    case ConvexFamily::negative_log: return "negative_log";
    case ConvexFamily::affine_minus_power: return "affine_minus_power";
  }
  return "power";
}

std::string_view to_string(ScalarFamily f) {
  switch (f) {
    case ScalarFamily::exp: return "exp";
    case ScalarFamily::exp_midpoint: return "exp-midpoint";
    case ScalarFamily::power: return "power";
    case ScalarFamily::power_midpoint: return "power-midpoint";
    case ScalarFamily::amgm_midpoint: return "amgm-midpoint";
    case ScalarFamily::amgm: return "amgm";
  }
  return "amgm";
}

namespace {

void require_param(const ConvexFunction& f) {
  const double a = f.param;
  bool ok = std::isfinite(a);
  switch (f.family) {
    case ConvexFamily::exponential: ok = ok && a != 0.0; break;
    case ConvexFamily::power: ok = ok && (a < 0.0 || a >= 1.0); break;
    case ConvexFamily::negative_log: break;
    case ConvexFamily::affine_minus_power: ok = ok && a > 0.0 && a < 1.0; break;
  }
  if (!ok) {
    throw Error(ErrorCode::ParameterOutOfDomain,
                "parameter " + std::to_string(a) + " outside the " +
                    std::string(to_string(f.family)) + " family");
  }
}

}  // namespace

bool ConvexFunction::in_domain(double t) const {
  if (!std::isfinite(t)) return false;
  switch (family) {
    case ConvexFamily::exponential: return true;
    case ConvexFamily::power: return param < 0.0 ? t > 0.0 : t >= 0.0;
    case ConvexFamily::negative_log: return t > 0.0;
    case ConvexFamily::affine_minus_power: return t >= 0.0;
  }
  return false;
}

double ConvexFunction::operator()(double t) const {
  require_param(*this);
  if (!in_domain(t)) {
    throw Error(ErrorCode::DomainViolation,
                "point " + std::to_string(t) + " outside the domain of " +
                    std::string(to_string(family)));
  }
  switch (family) {
    case ConvexFamily::exponential: return std::exp(param * t);
    case ConvexFamily::power: return std::pow(t, param);
    case ConvexFamily::negative_log: return -std::log(t);
    case ConvexFamily::affine_minus_power: return 1.0 - param + param * t - std::pow(t, param);
  }
  return 0.0;
}

void JensenInstance::validate() const {
  if (points.empty() || points.size() != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "Jensen instance needs matching, non-empty tuples");
  }
  require_param(function);
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::ParameterOutOfDomain, "Jensen weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Jensen weights must sum to 1");
  }
  for (const double t : points) {
    if (!function.in_domain(t)) {
      throw Error(ErrorCode::DomainViolation,
                  "point " + std::to_string(t) + " outside the function's domain");
    }
  }
}

namespace {

struct JensenParts {
  double value = 0.0;      // Σ p_i f(x_i) − f(Σ p_i x_i)
  double magnitude = 0.0;  // Σ p_i |f(x_i)| + |f(Σ p_i x_i)|, the rounding scale
};

JensenParts jensen_parts(const JensenInstance& inst) {
  inst.validate();
  double avg = 0.0;
  double mean_x = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const double fx = inst.function(inst.points[i]);
    avg += inst.weights[i] * fx;
    mag += inst.weights[i] * std::abs(fx);
    mean_x += inst.weights[i] * inst.points[i];
  }
  // Convex combinations of in-domain points stay in the (interval) domain;
  // clamping only guards round-off at a closed endpoint such as t = 0.
  const auto [lo, hi] = std::minmax_element(inst.points.begin(), inst.points.end());
  mean_x = std::clamp(mean_x, *lo, *hi);
  const double f_mean = inst.function(mean_x);
  return {avg - f_mean, mag + std::abs(f_mean)};
}

nlohmann::json jensen_json(const JensenInstance& inst) {
  return nlohmann::json{{"points", inst.points},
                        {"weights", inst.weights},
                        {"family", std::string(to_string(inst.function.family))},
                        {"param", inst.function.param}};
}

}  // namespace

double jensen_functional(const JensenInstance& inst) { return jensen_parts(inst).value; }

LawReport check_jensen_bounds(const JensenInstance& inst_p, const JensenInstance& inst_q,
                              const Tolerances& tol) {
  if (inst_p.points != inst_q.points || inst_p.function.family != inst_q.function.family ||
      inst_p.function.param != inst_q.function.param) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Jensen bounds need shared points and function");
  }
  if (inst_p.weights.size() != inst_q.weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight tuples differ in length");
  }
  for (const double qi : inst_q.weights) {
    if (!(qi > 0.0)) throw Error(ErrorCode::ZeroDenominatorWeight, "every q_i must be positive");
  }
  const JensenParts jp = jensen_parts(inst_p);
  const JensenParts jq = jensen_parts(inst_q);

  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst_p.weights.size(); ++i) {
    const double ratio = inst_p.weights[i] / inst_q.weights[i];
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }

  const nlohmann::json inputs{{"p", jensen_json(inst_p)}, {"q", jensen_json(inst_q)}};
  ReportBuilder rb("jensen-ratio-bounds", inputs, tol);
  const double scale = safe_scale(std::max(jp.magnitude, hi * jq.magnitude));
  rb.scalar("upper", (hi * jq.value - jp.value) / scale);
  rb.scalar("lower", (jp.value - lo * jq.value) / scale);
  rb.info("J_p", jp.value);
  rb.info("J_q", jq.value);
  rb.info("max_ratio", hi);
  rb.info("min_ratio", lo);
  rb.info("scale", scale);
  return rb.finish();
}

namespace {

/// One side of a two-point Young-type gap: value and rounding scale.
struct Gap {
  double value = 0.0;
  double magnitude = 0.0;
};

/// A_w(e^{αx}, e^{αy}) − exp(α·A_w(x, y)).
Gap exp_gap(double x, double y, double w, double alpha) {
  const double arith = (1.0 - w) * std::exp(alpha * x) + w * std::exp(alpha * y);
  return {arith - std::exp(alpha * ((1.0 - w) * x + w * y)), arith};
}

/// A_w(a^α, b^α) − G_w(a, b)^α.
Gap power_gap(double a, double b, double w, double alpha) {
  const double arith = (1.0 - w) * std::pow(a, alpha) + w * std::pow(b, alpha);
  return {arith - std::pow(std::pow(a, 1.0 - w) * std::pow(b, w), alpha), arith};
}

}  // namespace

LawReport check_scalar_refinements(double a, double b, double p, double q, double alpha,
                                   ScalarFamily family, const Tolerances& tol) {
  const bool midpoint = family == ScalarFamily::exp_midpoint ||
                        family == ScalarFamily::power_midpoint ||
                        family == ScalarFamily::amgm_midpoint;
  const bool exponential = family == ScalarFamily::exp || family == ScalarFamily::exp_midpoint;
  const bool amgm = family == ScalarFamily::amgm || family == ScalarFamily::amgm_midpoint;

  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::ParameterOutOfDomain, "p must lie in [0, 1]");
  if (!midpoint && !(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "q must lie in (0, 1)");
  }
  if (amgm) alpha = 1.0;
  if (!(alpha != 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "alpha must be a nonzero real");
  }
  if (!std::isfinite(a) || !std::isfinite(b) || (!exponential && !(a > 0.0 && b > 0.0))) {
    throw Error(ErrorCode::ParameterOutOfDomain,
                exponential ? "x and y must be finite" : "a and b must be positive");
  }

  nlohmann::json inputs{{"a", a}, {"b", b}, {"p", p}, {"family", std::string(to_string(family))}};
  if (!midpoint) inputs["q"] = q;
  if (!amgm) inputs["alpha"] = alpha;
  ReportBuilder rb("scalar-" + std::string(to_string(family)), inputs, tol);

  const auto gap = [&](double w) {
    return exponential ? exp_gap(a, b, w, alpha) : power_gap(a, b, w, alpha);
  };
  const Gap middle = gap(p);

  double upper_bound = 0.0;
  double lower_bound = 0.0;
  double bound_magnitude = 0.0;
  if (!midpoint) {
    const double hi = std::max(p / q, (1.0 - p) / (1.0 - q));
    const double lo = std::min(p / q, (1.0 - p) / (1.0 - q));
    const Gap at_q = gap(q);
    upper_bound = hi * at_q.value;
    lower_bound = lo * at_q.value;
    bound_magnitude = hi * at_q.magnitude;
  } else if (exponential) {
    const Gap half = gap(0.5);
    upper_bound = 2.0 * std::max(p, 1.0 - p) * half.value;
    lower_bound = 2.0 * std::min(p, 1.0 - p) * half.value;
    bound_magnitude = 2.0 * std::max(p, 1.0 - p) * half.magnitude;
  } else {
    // max{p, 1−p}(b^{α/2} − a^{α/2})², the closed form of the q = 1/2 bound.
    const double ra = std::pow(a, alpha / 2.0);
    const double rb_ = std::pow(b, alpha / 2.0);
    const double sq = (rb_ - ra) * (rb_ - ra);
    upper_bound = std::max(p, 1.0 - p) * sq;
    lower_bound = std::min(p, 1.0 - p) * sq;
    bound_magnitude = std::max(p, 1.0 - p) * std::max(ra * ra, rb_ * rb_);
  }

  const double scale = safe_scale(std::max(middle.magnitude, bound_magnitude));
  rb.scalar("upper", (upper_bound - middle.value) / scale);
  rb.scalar("lower", (middle.value - lower_bound) / scale);
  rb.info("middle", middle.value);
  rb.info("upper_bound", upper_bound);
  rb.info("lower_bound", lower_bound);
  rb.info("scale", scale);
  return rb.finish();
}

}  // namespace opmeans
