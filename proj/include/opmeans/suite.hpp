#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "opmeans/laws.hpp"

namespace opmeans {

enum class ReportFormat { json, csv };

struct FuzzConfig {
  std::uint64_t master_seed = 42;
  std::size_t trials = 1000;
  std::vector<std::size_t> dims{1, 2, 3, 4, 6, 8};
  double cond_max = 100.0;
  std::vector<double> nu_grid{-0.5, 0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.5};
  std::vector<std::string> suites{"*"};
  double tol_rel = 1e-9;
  std::string out_path;  // empty: standard output
  ReportFormat format = ReportFormat::json;
  bool keep_worst = false;
  /// Worker threads; 0 defers to OPMEANS_THREADS, then to the hardware.
  /// Never part of the report: results do not depend on it.
  unsigned threads = 0;

  /// trials ≥ 1 (ParameterOutOfDomain), dims in [1, 16] (BadDimension),
  /// cond_max ∈ [1, 1e8], a non-empty finite ν grid, tol_rel ≥ 0.
  void validate() const;
};

nlohmann::json config_to_json(const FuzzConfig& c);

/// One swept parameter setting. Laws with a single parameter use `first`.
struct SweepPoint {
  double first = 0.0;
  double second = 0.0;
};

/// How the fuzzer exercises one law: where its parameters come from, how a
/// random instance is drawn, and how a sweep point is written into the
/// instance's input JSON (which evaluate_law then replays).
struct FuzzLaw {
  std::string id;
  std::function<std::vector<SweepPoint>(const std::vector<double>& nu_grid)> sweep;
  std::function<nlohmann::json(std::uint64_t seed, std::size_t n, double cond_max)> instance;
  std::function<void(nlohmann::json& inputs, const SweepPoint& point)> bind;
};

/// Every fuzzable law, one per id in law_ids(), in the same order.
const std::vector<FuzzLaw>& fuzz_registry();

struct LawSummary {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;
  /// {"law_id", "inputs", "residuals" | "error"}; kept on failure or on request.
  std::optional<nlohmann::json> worst_instance;
};

struct SuiteReport {
  FuzzConfig config;
  std::map<std::string, LawSummary> per_law;
  std::int64_t wall_time_ms = 0;

  [[nodiscard]] std::size_t total_failures() const;
};

/// Laws whose id matches at least one glob. Throws UnknownLawId when a glob
/// matches nothing.
std::vector<std::size_t> select_laws(const std::vector<std::string>& globs);

/// Runs every selected law on trials × |dims| instances. Trial i of law j
/// (j = registry index, i = dim_index·trials + t) is seeded with
/// mix(master_seed, i, j), so the report is independent of thread count.
SuiteReport run_suite(const FuzzConfig& config);

nlohmann::json report_to_json(const SuiteReport& r);
SuiteReport report_from_json(const nlohmann::json& j);
std::string report_to_csv(const SuiteReport& r);

/// Writes JSON (key-sorted, 2-space indent) or CSV to `path`, or to stdout
/// when `path` is empty. Throws IoError.
void emit_report(const SuiteReport& report, ReportFormat format, const std::string& path);

/// Thread count from OPMEANS_THREADS (0 or unset: hardware concurrency).
unsigned default_thread_count();

}  // namespace opmeans
