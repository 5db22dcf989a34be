#include <algorithm>
#include <cmath>

#include "opmeans/generate.hpp"
#include "opmeans/matrix_json.hpp"
#include "opmeans/suite.hpp"

namespace opmeans {

namespace {

using nlohmann::json;
using Sweep = std::vector<SweepPoint>;

// The exponents of the (dcd)^λ identities are fixed; the ν grid does not
// apply to them.
constexpr double kLambdas[] = {-1.0, -0.5, 0.5, 2.0, 3.0};

Sweep every_nu(const std::vector<double>& grid) {
  Sweep s;
  for (const double v : grid) s.push_back({v, 0.0});
  return s;
}

Sweep unit_nu(const std::vector<double>& grid) {
  Sweep s;
  for (const double v : grid)
    if (v >= 0.0 && v <= 1.0) s.push_back({v, 0.0});
  return s;
}

/// (p, q) with p from the grid ∩ [0, 1] and q from the grid ∩ (0, 1).
Sweep weight_pairs(const std::vector<double>& grid) {
  Sweep s;
  for (const double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) continue;
    for (const double q : grid)
      if (q > 0.0 && q < 1.0) s.push_back({p, q});
  }
  return s;
}

Sweep widened_unit_nu(const std::vector<double>& grid) {
  Sweep s;
  for (const SweepPoint& p : unit_nu(grid)) {
    s.push_back({p.first, 1.0});
    s.push_back({p.first, 2.0});
  }
  return s;
}

Sweep single(const std::vector<double>&) { return Sweep{{0.0, 0.0}}; }

Sweep fixed_lambdas(const std::vector<double>&) {
  Sweep s;
  for (const double l : kLambdas) s.push_back({l, 0.0});
  return s;
}

json mat(const Matrix& m) { return matrix_to_json(m); }

json xy_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const InvertibleMatrix x = random_invertible(rng, n, cond_max);
  const InvertibleMatrix y = random_invertible(rng, n, cond_max);
  return json{{"x", mat(x.matrix())}, {"y", mat(y.matrix())}};
}

json ab_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const PositiveMatrix a = random_pd(rng, n, cond_max);
  const PositiveMatrix b = random_pd(rng, n, cond_max);
  return json{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}};
}

using Binder = std::function<void(json&, const SweepPoint&)>;

Binder bind_one(const char* key) {
  return [key](json& j, const SweepPoint& p) { j[key] = p.first; };
}

Binder bind_two(const char* k1, const char* k2) {
  return [k1, k2](json& j, const SweepPoint& p) {
    j[k1] = p.first;
    j[k2] = p.second;
  };
}

void bind_none(json&, const SweepPoint&) {}

json dcd_instance(std::uint64_t seed, std::size_t n, double cond_max, bool selfadjoint) {
  SplitMix64 rng(seed);
  const PositiveMatrix c = random_pd(rng, n, cond_max);
  const Matrix d = selfadjoint ? random_pd(rng, n, cond_max).matrix()
                               : random_invertible(rng, n, cond_max).matrix();
  return json{{"c", mat(c.matrix())},
              {"d", mat(d)},
              {"variant", selfadjoint ? "selfadjoint" : "star"}};
}

json congruence_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const PositiveMatrix a = random_pd(rng, n, cond_max);
  const PositiveMatrix b = random_pd(rng, n, cond_max);
  const InvertibleMatrix c = random_invertible(rng, n, cond_max);
  return json{{"a", mat(a.matrix())}, {"b", mat(b.matrix())}, {"c", mat(c.matrix())}};
}

json power_rules_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const PositiveMatrix a = random_pd(rng, n, cond_max);
  const double alpha = rng.uniform(-2.0, 2.0);
  const double beta = rng.uniform(-2.0, 2.0);
  return json{{"a", mat(a.matrix())}, {"alpha", alpha}, {"beta", beta}};
}

/// b ≻ 0 and a = b + s·c with c ≻ 0 and s ∈ [0, 1), so a ⪰ b holds by
/// construction and s near 0 probes the nearly-equal regime.
json loewner_heinz_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const PositiveMatrix b = random_pd(rng, n, cond_max);
  const PositiveMatrix c = random_pd(rng, n, cond_max);
  const double s = rng.uniform();
  const Matrix a = b.matrix() + Complex(s) * c.matrix();
  return json{{"a", mat(HermitianMatrix::from_hermitian_part(a).matrix())}, {"b", mat(b.matrix())}};
}

json contour_instance(std::uint64_t seed, std::size_t n, double cond_max) {
  SplitMix64 rng(seed);
  const PositiveMatrix a = random_pd(rng, n, cond_max);
  return json{{"a", mat(a.matrix())}, {"nodes", 256}};
}

/// A Jensen pair of length n: shared points and function, weights p with
/// occasional zeros and strictly positive q.
json jensen_instance(std::uint64_t seed, std::size_t n, double) {
  SplitMix64 rng(seed);
  const auto family_index = static_cast<int>(rng.next() % 4);
  std::string family;
  double param = 0.0;
  double lo = 0.05;
  double hi = 5.0;
  switch (family_index) {
    case 0:
      family = "exponential";
      param = rng.uniform(0.1, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      lo = -3.0;
      hi = 3.0;
      break;
    case 1:
      family = "power";
      param = rng.uniform() < 0.5 ? rng.uniform(-3.0, -0.1) : rng.uniform(1.0, 4.0);
      break;
    case 2: family = "negative_log"; break;
    default:
      family = "affine_minus_power";
      param = rng.uniform(0.05, 0.95);
      break;
  }
  std::vector<double> points(n);
  for (double& t : points) t = rng.uniform(lo, hi);

  const auto weights = [&](bool allow_zero) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (double& v : w) {
      v = allow_zero && rng.uniform() < 0.2 ? 0.0 : -std::log(1.0 - rng.uniform()) + 1e-3;
      sum += v;
    }
    if (sum == 0.0) {
      w[0] = 1.0;
      sum = 1.0;
    }
    for (double& v : w) v /= sum;
    return w;
  };
  const std::vector<double> p = weights(true);
  const std::vector<double> q = weights(false);
  const auto inst = [&](const std::vector<double>& w) {
    return json{{"points", points}, {"weights", w}, {"family", family}, {"param", param}};
  };
  return json{{"p", inst(p)}, {"q", inst(q)}};
}

json scalar_instance(std::uint64_t seed, bool exponential) {
  SplitMix64 rng(seed);
  double a = 0.0;
  double b = 0.0;
  if (exponential) {
    a = rng.uniform(-3.0, 3.0);
    b = rng.uniform(-3.0, 3.0);
  } else {
    a = std::exp(rng.uniform(-4.0, 4.0));
    b = std::exp(rng.uniform(-4.0, 4.0));
  }
  const double alpha = rng.uniform(0.1, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  return json{{"a", a}, {"b", b}, {"alpha", alpha}};
}

std::vector<FuzzLaw> build() {
  std::vector<FuzzLaw> r;
  r.push_back({"dcd-power-selfadjoint", fixed_lambdas,
               [](std::uint64_t s, std::size_t n, double c) { return dcd_instance(s, n, c, true); },
               bind_one("lambda")});
  r.push_back({"dcd-power-star", fixed_lambdas,
               [](std::uint64_t s, std::size_t n, double c) { return dcd_instance(s, n, c, false); },
               bind_one("lambda")});
  r.push_back({"geometric-swap", every_nu, ab_instance, bind_one("nu")});
  r.push_back({"quadratic-inverse", every_nu, xy_instance, bind_one("nu")});
  r.push_back({"quadratic-representation", every_nu, xy_instance, bind_one("nu")});
  r.push_back({"quadratic-extends-geometric", every_nu, ab_instance, bind_one("nu")});
  r.push_back({"mean-symmetry", single, ab_instance, bind_none});
  r.push_back({"mean-congruence", single, congruence_instance, bind_none});
  r.push_back({"mean-inversion", unit_nu, ab_instance, bind_one("nu")});
  r.push_back({"power-rules", single, power_rules_instance, bind_none});
  r.push_back({"loewner-heinz", unit_nu, loewner_heinz_instance, bind_one("p")});
  r.push_back({"contour-oracle", every_nu, contour_instance, bind_one("alpha")});
  r.push_back({"hga-squared", unit_nu, xy_instance, bind_one("nu")});
  r.push_back({"hga-half", unit_nu, xy_instance, bind_one("nu")});
  r.push_back({"hga-positive-pair", unit_nu, xy_instance, bind_one("nu")});
  r.push_back({"norm-chain", unit_nu, xy_instance, bind_one("nu")});
  r.push_back({"refinement-general", weight_pairs, xy_instance, bind_two("p", "q")});
  r.push_back({"refinement-midpoint", unit_nu, xy_instance, bind_one("p")});
  r.push_back({"refinement-pair", weight_pairs, xy_instance, bind_two("p", "q")});
  r.push_back({"refinement-pair-midpoint", unit_nu, xy_instance, bind_one("p")});
  for (const char* id : {"bounded-delta", "bounded-root", "bounded-pair-delta", "bounded-pair-root"}) {
    r.push_back({id, widened_unit_nu, xy_instance, bind_two("nu", "widen")});
  }
  r.push_back({"jensen-ratio-bounds", single, jensen_instance, bind_none});

  // Scalar families: the general forms sweep (p, q), the midpoint forms p
  // alone. The AM-GM families fix α = 1, so the drawn α is dropped.
  const auto scalar_law = [&r](const char* id, bool general, bool exponential, bool drop_alpha) {
    r.push_back({id, general ? weight_pairs : unit_nu,
                 [exponential, drop_alpha](std::uint64_t s, std::size_t, double) {
                   json j = scalar_instance(s, exponential);
                   if (drop_alpha) j.erase("alpha");
                   return j;
                 },
                 general ? bind_two("p", "q") : bind_one("p")});
  };
  scalar_law("scalar-exp", true, true, false);
  scalar_law("scalar-exp-midpoint", false, true, false);
  scalar_law("scalar-power", true, false, false);
  scalar_law("scalar-power-midpoint", false, false, false);
  scalar_law("scalar-amgm", true, false, true);
  scalar_law("scalar-amgm-midpoint", false, false, true);
  return r;
}

}  // namespace

const std::vector<FuzzLaw>& fuzz_registry() {
  static const std::vector<FuzzLaw> registry = build();
  return registry;
}

}  // namespace opmeans
