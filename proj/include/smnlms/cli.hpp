#pragma once

// Command-line front end. Requires CLI11 on the include path.
//
// Exit codes: 0 all bounds verified, 1 bound violation, 2 usage error,
// 3 I/O error.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smnlms/error.hpp"
#include "smnlms/report_io.hpp"
#include "smnlms/sysid.hpp"

namespace smnlms::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kIo = 3,
};

struct OutputPaths {
  std::optional<std::string> trace_path = "trace.csv";  // empty with --no-trace
  std::optional<std::string> summary_path;              // stdout only when empty
};

struct Options {
  ScenarioConfig scenario;
  OutputPaths paths;
  std::size_t ensemble = 1;
};

class UsageError : public Error {
 public:
  UsageError(std::string message, int exit_code = kUsage)
      : Error(std::move(message)), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

inline void configure_app(CLI::App& app, Options& opts, std::optional<double>& gamma_bar,
                          std::string& trace, bool& no_trace, std::string& summary) {
  ScenarioConfig& s = opts.scenario;
  const std::map<std::string, Algorithm> algorithms{{"sm-nlms", Algorithm::kSmNlms},
                                                    {"nlms", Algorithm::kNlms}};
  const std::map<std::string, InputMode> inputs{{"delay-line", InputMode::kDelayLine},
                                                {"iid", InputMode::kIid}};

  app.add_option("--algorithm", s.algorithm, "Adaptive algorithm")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case))
      ->default_str("sm-nlms");
  app.add_option("--taps", s.taps, "Filter length N+1")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  app.add_option("--noise-var", s.noise_variance, "Noise variance sigma_n^2")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--delta", s.delta, "Regularizer, > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tau", s.tau, "gamma_bar = sqrt(tau * sigma_n^2); 0 is a stress mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--gamma-bar", gamma_bar, "Error bound; overrides --tau")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--iterations", s.iterations, "Iterations K")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  app.add_option("--seed", s.seed, "Base seed")->capture_default_str();
  app.add_option("--nlms-step", s.nlms_step, "Step size of the NLMS baseline")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--input", s.input, "Regressor structure")
      ->transform(CLI::CheckedTransformer(inputs, CLI::ignore_case))
      ->default_str("delay-line");
  app.add_option("--ensemble", opts.ensemble, "Independent runs with seeds seed..seed+R-1")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  auto* trace_opt = app.add_option("--trace", trace, "Per-iteration CSV trace path")
                        ->capture_default_str();
  app.add_flag("--no-trace", no_trace, "Do not write a trace")->excludes(trace_opt);
  app.add_option("--summary", summary, "Summary output path (always echoed to stdout)");
}

// argv without the program name.
inline Options parse_args(std::vector<std::string> args) {
  Options opts;
  std::optional<double> gamma_bar;
  std::string trace = *opts.paths.trace_path;
  bool no_trace = false;
  std::string summary;

  CLI::App app{"Set-membership NLMS system identification with l2-robustness audit",
               "smnlms"};
  configure_app(app, opts, gamma_bar, trace, no_trace, summary);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), kOk);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  opts.scenario.gamma_bar_override = gamma_bar;
  opts.paths.trace_path = no_trace ? std::nullopt : std::optional<std::string>(trace);
  if (!summary.empty()) opts.paths.summary_path = summary;
  try {
    opts.scenario.validate();
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }
  return opts;
}

// "trace.csv" -> "trace.seed7.csv" for ensemble members.
inline std::string ensemble_trace_path(const std::string& base, std::uint64_t seed) {
  const std::size_t slash = base.find_last_of('/');
  const std::size_t dot = base.find_last_of('.');
  const std::string tag = ".seed" + std::to_string(seed);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  try {
    opts = parse_args(args);
  } catch (const UsageError& e) {
    (e.exit_code() == kOk ? out : err) << e.what() << '\n';
    return e.exit_code();
  }

  std::vector<RunResult> results;
  try {
    results = run_ensemble(opts.scenario, opts.ensemble);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }

  std::size_t violations = 0;
  for (const RunResult& r : results) violations += r.violations.size();

  try {
    if (opts.paths.trace_path) {
      for (const RunResult& r : results) {
        emit_trace(r, results.size() == 1 ? *opts.paths.trace_path
                                          : ensemble_trace_path(*opts.paths.trace_path, r.config.seed));
      }
    }
    if (opts.paths.summary_path) emit_summary(results, *opts.paths.summary_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i > 0) out << '\n';
    write_summary(out, results[i]);
  }
  return violations == 0 ? kOk : kViolation;
}

}  // namespace smnlms::cli
