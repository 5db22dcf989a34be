// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "opmeans/error.hpp"
#include "opmeans/funcalc.hpp"
#include "opmeans/generate.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/means.hpp"
#include "opmeans/rng.hpp"
#include "opmeans/suite.hpp"

using namespace opmeans;

namespace {

const std::vector<std::size_t> kDims{1, 2, 3, 4, 6, 8};
constexpr double kCond = 100.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double min_residual(const LawReport& r) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [name, v] : r.residuals) m = std::min(m, v);
  return m;
}

double max_abs_residual(const LawReport& r) {
  double m = 0.0;
  for (const auto& [name, v] : r.residuals) m = std::max(m, std::abs(v));
  return m;
}

double max_residual(const LawReport& r) {
  double m = 0.0;
  for (const auto& [name, v] : r.residuals) m = std::max(m, v);
  return m;
}

double rel_frobenius(const Matrix& a, const Matrix& b) {
  return norms(a - b).frobenius / norms(b).frobenius;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Representation identity over every dimension and the listed ν values.
Outcome representation() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> nus{-0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5};
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::size_t d = 0; d < kDims.size(); ++d) {
    for (std::uint64_t t = 0; t < 1000; ++t) {
      SplitMix64 rng(mix(1001, t, d));
      const InvertibleMatrix x = random_invertible(rng, kDims[d], kCond);
      const InvertibleMatrix y = random_invertible(rng, kDims[d], kCond);
      for (const double nu : nus) {
        worst = std::max(worst, max_residual(check_representation(x, y, nu)));
        ++checks;
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst residual %.2e over %zu checks in %.1f s", worst, checks,
                secs);
  return {worst <= 1e-8 && secs < 30.0, buf};
}

// Arithmetic ⪰ quadratic ⪰ harmonic chains, with their equality cases.
Outcome hga_chains() {
  double worst = std::numeric_limits<double>::infinity();
  double equality = 0.0;
  std::size_t checks = 0;
  for (std::size_t d = 0; d < kDims.size(); ++d) {
    for (std::uint64_t t = 0; t < 200; ++t) {
      SplitMix64 rng(mix(2002, t, d));
      const InvertibleMatrix x = random_invertible(rng, kDims[d], kCond);
      const InvertibleMatrix y = random_invertible(rng, kDims[d], kCond);
      for (const ChainKind k : {ChainKind::squared, ChainKind::half, ChainKind::positive_pair}) {
        for (int i = 0; i <= 10; ++i) {
          const double nu = i / 10.0;
          const LawReport r = check_hga_chain(x, y, nu, k);
          worst = std::min(worst, min_residual(r));
          if (i == 0 || i == 10) equality = std::max(equality, max_abs_residual(r));
          ++checks;
        }
        equality = std::max(equality, max_abs_residual(check_hga_chain(x, x, rng.uniform(), k)));
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst margin %.2e, equality cases within %.2e over %zu checks",
                worst, equality, checks);
  return {worst >= -1e-9 && equality <= 1e-10, buf};
}

Outcome dcd() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (const DcdVariant v : {DcdVariant::selfadjoint, DcdVariant::star}) {
    for (std::uint64_t t = 0; t < 500; ++t) {
      SplitMix64 rng(mix(3003, t, static_cast<std::uint64_t>(v)));
      const std::size_t n = 1 + t % 8;
      const PositiveMatrix c = random_pd(rng, n, kCond);
      const InvertibleMatrix d = v == DcdVariant::selfadjoint
                                     ? InvertibleMatrix(random_pd(rng, n, kCond).matrix())
                                     : random_invertible(rng, n, kCond);
      for (const double lambda : {-1.0, -0.5, 0.5, 2.0, 3.0}) {
        worst = std::max(worst, max_residual(check_dcd_identity(c, d, lambda, v)));
        ++checks;
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst residual %.2e over %zu checks", worst, checks);
  return {worst <= 1e-8, buf};
}

Outcome refinement() {
  double worst = std::numeric_limits<double>::infinity();
  double equality = 0.0;
  double midpoint_gap = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    SplitMix64 rng(mix(4004, t, 0));
    const std::size_t n = kDims[t % kDims.size()];
    const InvertibleMatrix x = random_invertible(rng, n, kCond);
    const InvertibleMatrix y = random_invertible(rng, n, kCond);
    const std::pair<RefinementForm, RefinementForm> forms[] = {
        {RefinementForm::general, RefinementForm::midpoint},
        {RefinementForm::positive_pair, RefinementForm::positive_pair_midpoint}};
    for (const auto& [general, midpoint] : forms) {
      for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        for (int j = 1; j <= 9; ++j) {
          const double q = j / 10.0;
          const LawReport r = check_operator_refinement(x, y, p, q, general);
          worst = std::min(worst, min_residual(r));
          if (i == j) equality = std::max(equality, max_abs_residual(r));
          ++checks;
        }
        const LawReport g = check_operator_refinement(x, y, p, 0.5, general);
        const LawReport m = check_operator_refinement(x, y, p, 0.5, midpoint);
        for (const auto& [name, v] : g.residuals)
          midpoint_gap = std::max(midpoint_gap, std::abs(v - m.residuals.at(name)));
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "worst margin %.2e, p = q within %.2e, midpoint forms agree to %.2e (%zu checks)",
                worst, equality, midpoint_gap, checks);
  return {worst >= -1e-9 && equality <= 1e-10 && midpoint_gap <= 1e-12, buf};
}

Outcome bounded() {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t checks = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    SplitMix64 rng(mix(5005, t, 0));
    const std::size_t n = kDims[t % kDims.size()];
    const InvertibleMatrix x = random_invertible(rng, n, kCond);
    const InvertibleMatrix y = random_invertible(rng, n, kCond);
    for (const BoundedForm f : {BoundedForm::delta, BoundedForm::root, BoundedForm::pair_delta,
                                BoundedForm::pair_root}) {
      for (int i = 1; i <= 9; ++i) {
        for (const double widen : {1.0, 2.0}) {
          worst = std::min(worst, min_residual(check_bounded_estimates(x, y, i / 10.0, f, widen)));
          ++checks;
        }
      }
    }
  }
  // Hand case: m = 2, M = 3, gap = diag(2,2), Δ = 2, δ = 1/2.
  const InvertibleMatrix hx(Matrix::diagonal({1.0, 2.0}));
  const InvertibleMatrix hy(Matrix::diagonal({3.0, 4.0}));
  const LawReport hand = check_bounded_estimates(hx, hy, 0.5, BoundedForm::delta);
  const Matrix gap = arithmetic_mean(modulus_squared(hx.matrix()), modulus_squared(hy.matrix()), 0.5)
                         .matrix() -
                     quadratic_geometric_mean(hx, hy, 0.5).matrix();
  const double hand_err = std::max({norms(gap - Matrix::diagonal({2.0, 2.0})).frobenius,
                                    std::abs(hand.diagnostics.at("Delta") - 2.0),
                                    std::abs(hand.diagnostics.at("delta") - 0.5)});
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst margin %.2e over %zu checks, hand case error %.2e", worst,
                checks, hand_err);
  return {worst >= -1e-9 && hand_err <= 1e-12, buf};
}

// Δ and δ against a brute-force scan of f(t) = 1 − ν + νt − t^ν.
Outcome bound_functions_grid() {
  constexpr int kGrid = 100000;
  double worst = 0.0;
  int branch_hits[3] = {0, 0, 0};
  SplitMix64 rng(6006);
  for (int t = 0; t < 200; ++t) {
    const int branch = t % 3;
    double k = 0.0;
    double big_k = 0.0;
    if (branch == 0) {  // k < K < 1
      big_k = std::exp(-rng.uniform(0.01, 2.0));
      k = big_k * std::exp(-rng.uniform(0.01, 2.0));
    } else if (branch == 1) {  // k ≤ 1 ≤ K
      k = std::exp(-rng.uniform(0.0, 2.0));
      big_k = std::exp(rng.uniform(0.0, 2.0));
    } else {  // 1 < k < K
      k = std::exp(rng.uniform(0.01, 2.0));
      big_k = k * std::exp(rng.uniform(0.01, 2.0));
    }
    const double nu = rng.uniform(0.01, 0.99);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      const double s = k + (big_k - k) * static_cast<double>(i) / (kGrid - 1);
      const double f = 1.0 - nu + nu * s - std::pow(s, nu);
      hi = std::max(hi, f);
      lo = std::min(lo, f);
    }
    const BoundPair b = opmeans::bound_functions(k, big_k, nu);
    worst = std::max({worst, std::abs(b.upper - hi), std::abs(b.lower - lo)});
    ++branch_hits[branch];
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst deviation %.2e; triples below/around/above 1: %d/%d/%d",
                worst, branch_hits[0], branch_hits[1], branch_hits[2]);
  return {worst <= 1e-6 && branch_hits[0] > 0 && branch_hits[1] > 0 && branch_hits[2] > 0, buf};
}

// Spectra pinned at both ends of [0.1, 10], non-integer exponents.
Outcome contour() {
  const double alphas[] = {-0.5, 0.25, 0.5, 0.75, 1.5};
  double worst256 = 0.0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < 100; ++t) {
    SplitMix64 rng(mix(7007, t, 0));
    const std::size_t n = 2 + t % 7;
    std::vector<double> spectrum{0.1, 10.0};
    while (spectrum.size() < n) spectrum.push_back(0.1 * rng.log_uniform(100.0));
    const PositiveMatrix a = random_pd_with_spectrum(rng, spectrum);
    const double alpha = alphas[t % 5];
    const Matrix exact = real_power_spectral(a, alpha).matrix();
    const SpectrumBounds sb = spectrum_bounds(a);
    const double e256 = rel_frobenius(real_power_contour(a, alpha, default_contour(sb, 256)), exact);
    const double e128 = rel_frobenius(real_power_contour(a, alpha, default_contour(sb, 128)), exact);
    worst256 = std::max(worst256, e256);
    worst_ratio = std::min(worst_ratio, e128 / e256);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst error at 256 nodes %.2e, smallest err128/err256 %.3g",
                worst256, worst_ratio);
  return {worst256 <= 1e-8 && worst_ratio >= 100.0, buf};
}

Outcome scalar_suites() {
  const ScalarFamily families[] = {ScalarFamily::exp,           ScalarFamily::exp_midpoint,
                                   ScalarFamily::power,         ScalarFamily::power_midpoint,
                                   ScalarFamily::amgm_midpoint, ScalarFamily::amgm};
  double worst = std::numeric_limits<double>::infinity();
  std::size_t draws = 0;
  for (std::size_t f = 0; f < 6; ++f) {
    const ScalarFamily family = families[f];
    const bool exponential = family == ScalarFamily::exp || family == ScalarFamily::exp_midpoint;
    SplitMix64 rng(mix(8008, 0, f));
    for (int t = 0; t < 10000; ++t) {
      const double a = exponential ? rng.uniform(-3.0, 3.0) : std::exp(rng.uniform(-4.0, 4.0));
      const double b = exponential ? rng.uniform(-3.0, 3.0) : std::exp(rng.uniform(-4.0, 4.0));
      const double alpha = rng.uniform(0.1, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const double p = rng.uniform();
      const double q = rng.uniform(0.01, 0.99);
      worst = std::min(worst, min_residual(check_scalar_refinements(a, b, p, q, alpha, family)));
      ++draws;
    }
  }
  const LawReport km = check_scalar_refinements(1.0, 4.0, 0.5, 0.5, 1.0, ScalarFamily::amgm_midpoint);
  const double km_slack = max_abs_residual(km);
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst slack %.2e over %zu draws, Kittaneh-Manasrah case %.2e",
                worst, draws, km_slack);
  return {worst >= -1e-12 && km_slack <= 1e-14, buf};
}

// Runs the default suite twice at different thread counts. The second line
// records the zero-false-alarm and coverage result of the same run.
std::vector<std::pair<std::string, Outcome>> determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  FuzzConfig config;
  config.threads = 1;
  const SuiteReport one = run_suite(config);
  config.threads = 2;
  const SuiteReport two = run_suite(config);
  auto canonical = [](const SuiteReport& r) {
    nlohmann::json j = report_to_json(r);
    j.erase("wall_time_ms");
    return j.dump(2);
  };
  const bool same = canonical(one) == canonical(two);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s JSON at 1 and 2 threads (two default runs, %.0f s)",
                same ? "identical" : "DIFFERENT", seconds_since(t0));
  const bool covered = one.per_law.size() == law_ids().size();
  char buf2[160];
  std::snprintf(buf2, sizeof buf2, "%zu failing trials, %zu of %zu laws exercised",
                one.total_failures(), one.per_law.size(), law_ids().size());
  return {{"determinism", {same, buf}},
          {"defaults", {one.total_failures() == 0 && covered, buf2}}};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"representation", representation},
      {"hga chains", hga_chains},
      {"dcd identities", dcd},
      {"refinement", refinement},
      {"bounded estimates", bounded},
      {"bound functions", bound_functions_grid},
      {"contour oracle", contour},
      {"scalar suites", scalar_suites},
  };
  int failures = 0;
  int index = 0;
  auto report = [&](const std::string& label, const Outcome& o) {
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", label.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };
  for (const auto& [name, run] : criteria) {
    const std::string label = std::to_string(++index) + " " + name;
    try {
      report(label, run());
    } catch (const std::exception& e) {
      report(label, {false, std::string("threw: ") + e.what()});
    }
  }
  try {
    const auto lines = determinism();
    report("9 " + lines[0].first, lines[0].second);
    report("   " + lines[1].first, lines[1].second);
  } catch (const std::exception& e) {
    report("9 determinism", {false, std::string("threw: ") + e.what()});
  }
  return failures == 0 ? 0 : 1;
}
