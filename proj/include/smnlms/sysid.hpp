#pragma once

// System-identification scenario: an unknown FIR system w0 with standard
// normal taps, BPSK excitation, additive Gaussian measurement noise, and an
// adaptive filter started from w(0) = 0. Every step is audited against the
// known truth.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smnlms/error.hpp"
#include "smnlms/filter_core.hpp"
#include "smnlms/robustness.hpp"
#include "smnlms/signals.hpp"
#include "smnlms/vector_ops.hpp"

namespace smnlms {

enum class Algorithm { kSmNlms, kNlms };
enum class InputMode { kDelayLine, kIid };

inline const char* to_string(Algorithm a) noexcept {
  return a == Algorithm::kSmNlms ? "sm-nlms" : "nlms";
}
inline const char* to_string(InputMode m) noexcept {
  return m == InputMode::kDelayLine ? "delay-line" : "iid";
}

struct ScenarioConfig {
  std::size_t taps = 10;
  double noise_variance = 0.01;
  double delta = 1e-12;
  double tau = 2.0;
  std::optional<double> gamma_bar_override;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kSmNlms;
  double nlms_step = 1.0;
  InputMode input = InputMode::kDelayLine;

  // sqrt(tau * sigma_n^2) unless overridden.
  double gamma_bar() const {
    return gamma_bar_override ? *gamma_bar_override : std::sqrt(tau * noise_variance);
  }

  FilterConfig filter_config() const { return FilterConfig{gamma_bar(), delta, taps}; }

  void validate() const {
    if (taps < 1) throw InvalidConfig("taps must be >= 1");
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
      throw InvalidConfig("noise variance must be finite and >= 0");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidConfig("delta must be > 0");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidConfig("tau must be >= 0");
    if (gamma_bar_override && (!(*gamma_bar_override >= 0.0) || !std::isfinite(*gamma_bar_override))) {
      throw InvalidConfig("gamma_bar must be >= 0");
    }
    if (iterations < 1) throw InvalidConfig("iterations must be >= 1");
    if (algorithm == Algorithm::kNlms && (!(nlms_step > 0.0) || !std::isfinite(nlms_step))) {
      throw InvalidConfig("NLMS step must be > 0");
    }
  }
};

struct RunResult {
  ScenarioConfig config;
  std::vector<StepRecord> steps;
  std::vector<RobustnessRecord> audits;
  GlobalReport report;
  Vector w0;
  Vector final_w;
  std::vector<Violation> violations;  // every audit diagnostic plus the global check

  // ||w~(K)||^2 / ||w0||^2; empty when w0 = 0.
  std::optional<double> final_misalignment() const {
    const double ref = squared_norm(w0);
    if (ref == 0.0) return std::nullopt;
    return report.final_w_tilde_sq / ref;
  }
};

inline Vector draw_system(const ScenarioConfig& cfg, SeededSource& src) {
  Vector w0(cfg.taps);
  for (double& v : w0) v = standard_normal_sample(src);
  return w0;
}

inline double reference_sample(const Vector& w0, std::span<const double> x, double n) {
  require_same_size("reference_sample", w0.size(), x.size());
  return dot<double>(std::span<const double>(w0), x) + n;
}

// Produces x(k): newest BPSK sample first, zero-padded during warm-up.
class RegressorSource {
 public:
  RegressorSource(std::size_t taps, InputMode mode, SeededSource src)
      : mode_(mode), src_(src), x_(taps, 0.0) {}

  const Vector& next() {
    if (mode_ == InputMode::kDelayLine) {
      for (std::size_t i = x_.size() - 1; i > 0; --i) x_[i] = x_[i - 1];
      x_[0] = bpsk_sample(src_);
    } else {
      for (double& v : x_) v = bpsk_sample(src_);
    }
    return x_;
  }

 private:
  InputMode mode_;
  SeededSource src_;
  Vector x_;
};

inline RunResult run(const ScenarioConfig& cfg) {
  cfg.validate();

  SeededSource system_src(cfg.seed, StreamTag::kSystem);
  SeededSource noise_src(cfg.seed, StreamTag::kNoise);
  RegressorSource regressors(cfg.taps, cfg.input, SeededSource(cfg.seed, StreamTag::kInput));
  const NoiseSpec noise_spec{cfg.noise_variance};

  RunResult result;
  result.config = cfg;
  result.w0 = draw_system(cfg, system_src);
  result.steps.reserve(cfg.iterations);
  result.audits.reserve(cfg.iterations);

  TruthContext ctx{result.w0, {}};
  ctx.noise.reserve(cfg.iterations);

  const FilterConfig filter = cfg.filter_config();
  const AuditOptions audit_opts{cfg.algorithm == Algorithm::kSmNlms};
  FilterState state = FilterState::zeros(cfg.taps);

  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    const Vector& x = regressors.next();
    const double n = gaussian_sample(noise_src, noise_spec);
    ctx.noise.push_back(n);
    const double d = reference_sample(result.w0, x, n);

    try {
      StepResult step = cfg.algorithm == Algorithm::kSmNlms
                            ? sm_nlms_step(state, x, d, filter, k)
                            : nlms_step(state, x, d, cfg.nlms_step, cfg.delta, k);
      RobustnessRecord audit = audit_step(ctx, step.record, audit_opts);
      result.violations.insert(result.violations.end(), audit.violations.begin(),
                               audit.violations.end());
      state = std::move(step.state);
      result.steps.push_back(std::move(step.record));
      result.audits.push_back(std::move(audit));
    } catch (const IterationError&) {
      throw;
    } catch (const Error& err) {
      throw IterationError(k, err.what());
    }
  }

  result.final_w = state.w;
  result.report = global_report(result.audits, squared_norm(result.w0));
  if (audit_opts.check_bounds && !result.report.bound_holds()) {
    result.violations.push_back(
        Violation{cfg.iterations, ViolationKind::kGlobalBound, *result.report.ratio});
  }
  return result;
}

// Independent runs with seeds seed, seed+1, ..., seed+R-1, in seed order.
inline std::vector<RunResult> run_ensemble(const ScenarioConfig& cfg, std::size_t runs) {
  if (runs < 1) throw InvalidConfig("ensemble size must be >= 1");
  std::vector<RunResult> out;
  out.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    ScenarioConfig c = cfg;
    c.seed = cfg.seed + r;
    out.push_back(run(c));
  }
  return out;
}

}  // namespace smnlms
