#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "opmeans/error.hpp"
#include "opmeans/generate.hpp"
#include "opmeans/rng.hpp"
#include "opmeans/suite.hpp"

using namespace opmeans;

namespace {

FuzzConfig small_config() {
  FuzzConfig c;
  c.trials = 3;
  c.dims = {1, 3};
  c.nu_grid = {0.0, 0.5, 1.0};
  c.threads = 1;
  return c;
}

std::string without_wall_time(const SuiteReport& r) {
  nlohmann::json j = report_to_json(r);
  j.erase("wall_time_ms");
  return j.dump(2);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("trial seeds chain two splitmix steps") {
  for (std::uint64_t m : {0ULL, 42ULL, 0xdeadbeefULL}) {
    for (std::uint64_t i : {0ULL, 1ULL, 999ULL}) {
      for (std::uint64_t j : {0ULL, 7ULL, 30ULL}) {
        const std::uint64_t inner = SplitMix64(m + kGolden * i).next();
        CHECK(mix(m, i, j) == SplitMix64(inner + kGolden * j).next());
      }
    }
  }
  CHECK(mix(42, 0, 0) != mix(42, 0, 1));
  CHECK(mix(42, 0, 1) != mix(42, 1, 0));
}

TEST_CASE("uniform draws stay in [0, 1)") {
  SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("generated invertible matrices") {
  const InvertibleMatrix one = gen_random_invertible(42, 1, 1.0);
  CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) <= 1e-15);

  CHECK(gen_random_invertible(7, 5, 30.0).matrix() == gen_random_invertible(7, 5, 30.0).matrix());
  CHECK(gen_random_invertible(7, 5, 30.0).matrix() != gen_random_invertible(8, 5, 30.0).matrix());

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const InvertibleMatrix x = gen_random_invertible(seed, 4, 100.0);
    const auto s = hermitian_eigenvalues(modulus_squared(x.matrix()));
    const double smin = std::sqrt(s.front());
    const double smax = std::sqrt(s.back());
    CHECK(smin * 100.0 >= smax * (1.0 - 1e-9));
    CHECK(smin >= 1.0 - 1e-9);
  }
  CHECK_THROWS_AS(gen_random_invertible(1, 0, 10.0), Error);
  CHECK_THROWS_AS(gen_random_invertible(1, 17, 10.0), Error);
  CHECK_THROWS_AS(gen_random_invertible(1, 3, 0.5), Error);
}

TEST_CASE("generated positive matrices") {
  CHECK(gen_random_pd(123, 1, 1.0).matrix() == Matrix::identity(1));
  CHECK(gen_random_pd(9, 6, 50.0).matrix() == gen_random_pd(9, 6, 50.0).matrix());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PositiveMatrix a = gen_random_pd(seed, 1 + seed % 8, 100.0);
    for (const double v : hermitian_eigenvalues(a.hermitian())) {
      CHECK(v >= 1.0 - 1e-9);
      CHECK(v <= 100.0 * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("random unitaries are unitary") {
  SplitMix64 rng(11);
  for (std::size_t n = 1; n <= 16; ++n) {
    const Matrix u = random_unitary(rng, n);
    CHECK(norms(u.adjoint() * u - Matrix::identity(n)).frobenius <= 1e-13 * n);
  }
}

TEST_CASE("config validation") {
  FuzzConfig c;
  CHECK_NOTHROW(c.validate());
  auto code = [](FuzzConfig bad) {
    try {
      bad.validate();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  c.trials = 0;
  CHECK(code(c) == ErrorCode::ParameterOutOfDomain);
  c = FuzzConfig{};
  c.dims = {2, 17};
  CHECK(code(c) == ErrorCode::BadDimension);
  c = FuzzConfig{};
  c.cond_max = 1e9;
  CHECK(code(c) == ErrorCode::ParameterOutOfDomain);
}

TEST_CASE("the fuzz registry covers every law id in order") {
  const auto& reg = fuzz_registry();
  const auto& ids = law_ids();
  REQUIRE(reg.size() == ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) CHECK(reg[i].id == ids[i]);
  CHECK(select_laws({"*"}).size() == ids.size());
}

TEST_CASE("suite globs") {
  CHECK(select_laws({"hga-*"}).size() == 3);
  CHECK(select_laws({"hga-half", "hga-*"}).size() == 3);
  try {
    (void)select_laws({"nothing-*"});
    FAIL("expected UnknownLawId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownLawId);
  }

  FuzzConfig c;
  c.suites = {"bounded-root"};
  c.trials = 10;
  c.dims = {2};
  const SuiteReport r = run_suite(c);
  REQUIRE(r.per_law.size() == 1);
  CHECK(r.per_law.at("bounded-root").trials == 10);
  CHECK(r.per_law.at("bounded-root").failures == 0);
}

TEST_CASE("suite reports do not depend on the thread count") {
  FuzzConfig c = small_config();
  const SuiteReport one = run_suite(c);
  c.threads = 3;
  const SuiteReport three = run_suite(c);
  CHECK(without_wall_time(one) == without_wall_time(three));
  CHECK(one.total_failures() == 0);
  for (const auto& [id, s] : one.per_law) {
    CHECK(s.trials == 6);
    CHECK(s.failures <= s.trials);
    CHECK_FALSE(s.worst_instance.has_value());
  }
}

TEST_CASE("a different master seed changes the report") {
  FuzzConfig c = small_config();
  c.suites = {"hga-*"};
  const SuiteReport a = run_suite(c);
  c.master_seed = 43;
  const SuiteReport b = run_suite(c);
  CHECK(a.per_law.at("hga-squared").worst_margin != b.per_law.at("hga-squared").worst_margin);
}

TEST_CASE("kept worst instances replay to their recorded margin") {
  FuzzConfig c = small_config();
  c.suites = {"refinement-general", "bounded-delta", "scalar-amgm", "contour-oracle"};
  c.keep_worst = true;
  const SuiteReport r = run_suite(c);
  for (const auto& [id, s] : r.per_law) {
    REQUIRE(s.worst_instance.has_value());
    const nlohmann::json& w = *s.worst_instance;
    CHECK(w.at("law_id") == id);
    const LawReport again = evaluate_law(id, w.at("inputs"));
    CHECK(again.margin == s.worst_margin);
    CHECK(again.pass);
  }
}

TEST_CASE("report JSON round-trips bit-exactly") {
  FuzzConfig c = small_config();
  c.keep_worst = true;
  c.suites = {"scalar-*", "norm-chain"};
  const SuiteReport r = run_suite(c);
  const SuiteReport back = report_from_json(nlohmann::json::parse(report_to_json(r).dump(2)));
  REQUIRE(back.per_law.size() == r.per_law.size());
  for (const auto& [id, s] : r.per_law) {
    const LawSummary& t = back.per_law.at(id);
    CHECK(t.trials == s.trials);
    CHECK(t.failures == s.failures);
    CHECK(t.worst_margin == s.worst_margin);
    CHECK(*t.worst_instance == *s.worst_instance);
  }
  CHECK(report_to_json(back) == report_to_json(r));
}

TEST_CASE("empty reports and CSV layout") {
  SuiteReport empty;
  const nlohmann::json j = report_to_json(empty);
  CHECK(j.at("per_law").is_object());
  CHECK(j.at("per_law").empty());
  CHECK(report_to_csv(empty) == "law_id,trials,failures,worst_margin\n");

  FuzzConfig c = small_config();
  c.suites = {"scalar-*"};
  const std::string csv = report_to_csv(run_suite(c));
  std::size_t rows = 0;
  for (const char ch : csv) rows += ch == '\n';
  CHECK(rows == 1 + select_laws({"scalar-*"}).size());
}

TEST_CASE("emit_report writes files and reports unwritable paths") {
  FuzzConfig c = small_config();
  c.suites = {"mean-*"};
  const SuiteReport r = run_suite(c);
  const auto path = std::filesystem::temp_directory_path() / "opmeans_emit_test.json";
  emit_report(r, ReportFormat::json, path.string());
  const nlohmann::json parsed = nlohmann::json::parse(slurp(path.string()));
  CHECK(parsed == report_to_json(r));
  std::filesystem::remove(path);

  try {
    emit_report(r, ReportFormat::csv, "/nonexistent-dir/report.csv");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
