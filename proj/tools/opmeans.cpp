// opmeans: seeded law fuzzing, single-case replay and ad-hoc real powers.
//
// Exit status: 0 when every evaluated law passes, 1 when some law fails,
// 2 on usage, parse or I/O errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opmeans/error.hpp"
#include "opmeans/funcalc.hpp"
#include "opmeans/laws.hpp"
#include "opmeans/matrix_json.hpp"
#include "opmeans/suite.hpp"

namespace {

using opmeans::Error;
using opmeans::ErrorCode;

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

int run_fuzz(const opmeans::FuzzConfig& cfg) {
  const opmeans::SuiteReport report = opmeans::run_suite(cfg);
  opmeans::emit_report(report, cfg.format, cfg.out_path);
  const std::size_t failures = report.total_failures();
  std::cerr << "opmeans fuzz: " << report.per_law.size() << " laws, " << failures
            << " failing trials, " << report.wall_time_ms << " ms\n";
  return failures == 0 ? 0 : 1;
}

int run_check(std::string law, const std::string& input) {
  const nlohmann::json doc = read_json(input);
  // Accept either a bare inputs object or a saved worst_instance
  // ({"law_id", "inputs", ...}).
  const bool wrapped = doc.is_object() && doc.contains("inputs");
  if (law.empty()) {
    if (!wrapped || !doc.contains("law_id")) {
      throw Error(ErrorCode::ParseError, "no --law given and the case file names no law_id");
    }
    law = doc.at("law_id").get<std::string>();
  }
  const opmeans::LawReport r = opmeans::evaluate_law(law, wrapped ? doc.at("inputs") : doc);
  std::cout << opmeans::report_to_json(r).dump(2) << "\n";
  return r.pass ? 0 : 1;
}

int run_power(const std::string& input, double alpha, const std::string& oracle,
              std::size_t nodes) {
  const nlohmann::json doc = read_json(input);
  const nlohmann::json& mj = doc.is_object() && doc.contains("a") ? doc.at("a") : doc;
  const opmeans::PositiveMatrix a{opmeans::HermitianMatrix(opmeans::matrix_from_json(mj))};
  opmeans::Matrix result = oracle == "contour"
                               ? opmeans::real_power_contour(
                                     a, alpha, opmeans::default_contour(opmeans::spectrum_bounds(a), nodes))
                               : opmeans::real_power_hermitian(a, alpha).matrix();
  std::cout << opmeans::matrix_to_json(result).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic weighted geometric mean: law fuzzing and replay"};
  app.require_subcommand(1);

  opmeans::FuzzConfig cfg;
  std::string format = "json";
  auto* fuzz = app.add_subcommand("fuzz", "Run the seeded law suite");
  fuzz->add_option("--seed", cfg.master_seed, "Master seed (64-bit)")->capture_default_str();
  fuzz->add_option("--trials", cfg.trials, "Trials per law and dimension")->capture_default_str();
  fuzz->add_option("--dims", cfg.dims, "Matrix orders, comma separated")->delimiter(',');
  fuzz->add_option("--cond-max", cfg.cond_max, "Largest condition number drawn")
      ->capture_default_str();
  fuzz->add_option("--nu", cfg.nu_grid, "Weight grid, comma separated")->delimiter(',');
  fuzz->add_option("--suite", cfg.suites, "Law id globs, comma separated")->delimiter(',');
  fuzz->add_option("--tol-rel", cfg.tol_rel, "Relative Loewner-order tolerance")
      ->capture_default_str();
  fuzz->add_option("--out", cfg.out_path, "Report path (default: stdout)");
  fuzz->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  fuzz->add_flag("--keep-worst", cfg.keep_worst, "Include the worst instance of every law");

  std::string law;
  std::string case_path;
  auto* check = app.add_subcommand("check", "Replay one law on a saved case");
  check->add_option("--law", law, "Law id (default: the case file's law_id)");
  check->add_option("--input", case_path, "Case JSON")->required();

  std::string matrix_path;
  double alpha = 0.5;
  std::string oracle = "spectral";
  std::size_t nodes = opmeans::kDefaultContourNodes;
  auto* power = app.add_subcommand("power", "Real power a^alpha of a positive matrix");
  power->add_option("--input", matrix_path, "Matrix JSON")->required();
  power->add_option("--alpha", alpha, "Exponent")->required();
  power->add_option("--oracle", oracle, "Evaluation route")
      ->check(CLI::IsMember({"spectral", "contour"}))
      ->capture_default_str();
  power->add_option("--nodes", nodes, "Contour nodes (power of two ≥ 16)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fuzz) {
      cfg.format = format == "csv" ? opmeans::ReportFormat::csv : opmeans::ReportFormat::json;
      return run_fuzz(cfg);
    }
    if (*check) return run_check(law, case_path);
    if (*power) return run_power(matrix_path, alpha, oracle, nodes);
  } catch (const Error& e) {
    std::cerr << "opmeans: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
