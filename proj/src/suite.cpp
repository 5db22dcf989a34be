#include "opmeans/suite.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "opmeans/error.hpp"
#include "opmeans/rng.hpp"

namespace opmeans {

void FuzzConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::ParameterOutOfDomain, "trials must be at least 1");
  if (dims.empty()) throw Error(ErrorCode::BadDimension, "no dimensions given");
  for (const std::size_t n : dims) {
    if (n < 1 || n > kMaxDim) {
      throw Error(ErrorCode::BadDimension, "dimension " + std::to_string(n) + " outside [1, 16]");
    }
  }
  if (!(cond_max >= 1.0 && cond_max <= 1e8)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "cond_max must lie in [1, 1e8]");
  }
  if (nu_grid.empty()) throw Error(ErrorCode::ParameterOutOfDomain, "empty ν grid");
  for (const double v : nu_grid) {
    if (!std::isfinite(v)) throw Error(ErrorCode::ParameterOutOfDomain, "non-finite ν in grid");
  }
  if (!(tol_rel >= 0.0) || !std::isfinite(tol_rel)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "tol_rel must be a finite nonnegative number");
  }
  if (suites.empty()) throw Error(ErrorCode::UnknownLawId, "no suite globs given");
}

nlohmann::json config_to_json(const FuzzConfig& c) {
  return nlohmann::json{{"seed", c.master_seed},
                        {"trials", c.trials},
                        {"dims", c.dims},
                        {"cond_max", c.cond_max},
                        {"nu", c.nu_grid},
                        {"suites", c.suites},
                        {"tol_rel", c.tol_rel},
                        {"format", c.format == ReportFormat::json ? "json" : "csv"},
                        {"out", c.out_path},
                        {"keep_worst", c.keep_worst}};
}

namespace {

FuzzConfig config_from_json(const nlohmann::json& j) {
  FuzzConfig c;
  c.master_seed = j.at("seed").get<std::uint64_t>();
  c.trials = j.at("trials").get<std::size_t>();
  c.dims = j.at("dims").get<std::vector<std::size_t>>();
  c.cond_max = j.at("cond_max").get<double>();
  c.nu_grid = j.at("nu").get<std::vector<double>>();
  c.suites = j.at("suites").get<std::vector<std::string>>();
  c.tol_rel = j.at("tol_rel").get<double>();
  c.format = j.at("format").get<std::string>() == "csv" ? ReportFormat::csv : ReportFormat::json;
  c.out_path = j.at("out").get<std::string>();
  c.keep_worst = j.at("keep_worst").get<bool>();
  return c;
}

/// JSON has no infinities; a margin of −∞ (a check that threw) is written
/// as null and read back as −∞.
nlohmann::json margin_to_json(double m) {
  return std::isfinite(m) ? nlohmann::json(m) : nlohmann::json(nullptr);
}

double margin_from_json(const nlohmann::json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

struct TrialOutcome {
  bool failed = false;
  double margin = std::numeric_limits<double>::infinity();
};

/// Evaluates one trial over the whole sweep. When `worst` is given it
/// receives the inputs and verdict of the sweep point with the smallest
/// margin; the suite asks for this only when re-running a law's worst trial,
/// so the bulk pass keeps no instance data in memory.
TrialOutcome run_trial(const FuzzLaw& law, std::uint64_t seed, std::size_t n,
                       const FuzzConfig& cfg, const std::vector<SweepPoint>& sweep,
                       const Tolerances& tol, nlohmann::json* worst = nullptr) {
  TrialOutcome out;
  nlohmann::json base;
  try {
    base = law.instance(seed, n, cfg.cond_max);
  } catch (const Error& e) {
    out.failed = true;
    out.margin = -std::numeric_limits<double>::infinity();
    if (worst) *worst = {{"law_id", law.id}, {"seed", seed}, {"dim", n}, {"error", e.what()}};
    return out;
  }
  bool have_worst = false;
  LawEvaluator evaluate(law.id);
  for (const SweepPoint& point : sweep) {
    nlohmann::json inputs = base;
    law.bind(inputs, point);
    double margin = 0.0;
    nlohmann::json verdict;
    bool ok = true;
    try {
      const LawReport r = evaluate(inputs, tol);
      margin = r.margin;
      ok = r.pass;
      if (worst) verdict = {{"residuals", r.residuals}};
    } catch (const Error& e) {
      margin = -std::numeric_limits<double>::infinity();
      ok = false;
      if (worst) verdict = {{"error", e.what()}};
    }
    out.failed = out.failed || !ok;
    if (margin < out.margin || !have_worst) {
      out.margin = margin;
      have_worst = true;
      if (worst) {
        *worst = {{"law_id", law.id}, {"inputs", std::move(inputs)}};
        worst->update(verdict);
      }
    }
  }
  if (sweep.empty()) out.margin = 0.0;
  return out;
}

}  // namespace

std::size_t SuiteReport::total_failures() const {
  std::size_t f = 0;
  for (const auto& [id, s] : per_law) f += s.failures;
  return f;
}

std::vector<std::size_t> select_laws(const std::vector<std::string>& globs) {
  const auto& reg = fuzz_registry();
  std::vector<bool> chosen(reg.size(), false);
  for (const std::string& g : globs) {
    bool hit = false;
    for (std::size_t j = 0; j < reg.size(); ++j) {
      if (fnmatch(g.c_str(), reg[j].id.c_str(), 0) == 0) {
        chosen[j] = true;
        hit = true;
      }
    }
    if (!hit) throw Error(ErrorCode::UnknownLawId, "no law matches \"" + g + "\"");
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < reg.size(); ++j)
    if (chosen[j]) out.push_back(j);
  return out;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("OPMEANS_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256UL));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const FuzzConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> selected = select_laws(config.suites);
  const auto& reg = fuzz_registry();
  Tolerances tol;
  tol.order = config.tol_rel;

  struct Job {
    std::size_t law;    // registry index
    std::size_t trial;  // global trial index within the law
  };
  const std::size_t per_law = config.trials * config.dims.size();
  std::vector<Job> jobs;
  jobs.reserve(selected.size() * per_law);
  for (const std::size_t j : selected)
    for (std::size_t i = 0; i < per_law; ++i) jobs.push_back({j, i});

  std::vector<std::vector<SweepPoint>> sweeps(reg.size());
  for (const std::size_t j : selected) sweeps[j] = reg[j].sweep(config.nu_grid);

  std::vector<TrialOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < jobs.size(); k = next.fetch_add(1)) {
      const Job& job = jobs[k];
      const std::size_t n = config.dims[job.trial / config.trials];
      const std::uint64_t seed = mix(config.master_seed, job.trial, job.law);
      outcomes[k] = run_trial(reg[job.law], seed, n, config, sweeps[job.law], tol);
    }
  };
  const unsigned threads = std::max(
      1U, std::min<unsigned>(config.threads ? config.threads : default_thread_count(),
                             static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Reduce in job order so ties resolve identically for any thread count.
  SuiteReport report;
  report.config = config;
  std::map<std::string, const Job*> worst_job;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::string& id = reg[jobs[k].law].id;
    LawSummary& s = report.per_law[id];
    const TrialOutcome& o = outcomes[k];
    if (s.trials == 0 || o.margin < s.worst_margin) {
      s.worst_margin = o.margin;
      worst_job[id] = &jobs[k];
    }
    ++s.trials;
    if (o.failed) ++s.failures;
  }
  for (auto& [id, s] : report.per_law) {
    if (s.failures == 0 && !config.keep_worst) continue;
    const Job& job = *worst_job.at(id);
    nlohmann::json instance;
    run_trial(reg[job.law], mix(config.master_seed, job.trial, job.law),
              config.dims[job.trial / config.trials], config, sweeps[job.law], tol, &instance);
    s.worst_instance = std::move(instance);
  }
  report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

nlohmann::json report_to_json(const SuiteReport& r) {
  nlohmann::json per_law = nlohmann::json::object();
  for (const auto& [id, s] : r.per_law) {
    nlohmann::json e{{"trials", s.trials},
                     {"failures", s.failures},
                     {"worst_margin", margin_to_json(s.worst_margin)}};
    if (s.worst_instance) e["worst_instance"] = *s.worst_instance;
    per_law[id] = std::move(e);
  }
  return nlohmann::json{{"config_echo", config_to_json(r.config)},
                        {"per_law", std::move(per_law)},
                        {"wall_time_ms", r.wall_time_ms}};
}

SuiteReport report_from_json(const nlohmann::json& j) {
  try {
    SuiteReport r;
    r.config = config_from_json(j.at("config_echo"));
    for (const auto& [id, e] : j.at("per_law").items()) {
      LawSummary s;
      s.trials = e.at("trials").get<std::size_t>();
      s.failures = e.at("failures").get<std::size_t>();
      s.worst_margin = margin_from_json(e.at("worst_margin"));
      if (e.contains("worst_instance")) s.worst_instance = e.at("worst_instance");
      r.per_law[id] = std::move(s);
    }
    r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string report_to_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "law_id,trials,failures,worst_margin\n";
  for (const auto& [id, s] : r.per_law) {
    // Same shortest round-trip spelling the JSON report uses.
    os << id << ',' << s.trials << ',' << s.failures << ','
       << margin_to_json(s.worst_margin).dump() << '\n';
  }
  return os.str();
}

void emit_report(const SuiteReport& report, ReportFormat format, const std::string& path) {
  const std::string text =
      format == ReportFormat::json ? report_to_json(report).dump(2) + "\n" : report_to_csv(report);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Error(ErrorCode::IoError, "failed writing report to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace opmeans
