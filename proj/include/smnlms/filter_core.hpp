#pragma once

// Set-membership NLMS recursion and a constant-step NLMS baseline, as pure
// step functions over explicit state.
//
//   e(k)     = d(k) - w(k)'x(k)
//   f        = 1 if |e(k)| > gamma_bar else 0
//   mu_bar   = 1 - gamma_bar / |e(k)|
//   alpha(k) = ||x(k)||^2 + delta
//   w(k+1)   = w(k) + (mu_bar / alpha) e(k) x(k) f

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

#include "smnlms/error.hpp"
#include "smnlms/vector_ops.hpp"

namespace smnlms {

struct FilterConfig {
  double gamma_bar = 0.0;  // error bound, >= 0
  double delta = 1e-12;    // regularizer, > 0
  std::size_t taps = 1;

  void validate() const {
    if (!(gamma_bar >= 0.0) || !std::isfinite(gamma_bar)) {
      throw InvalidConfig("gamma_bar must be finite and >= 0");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw InvalidConfig("delta must be finite and > 0");
    }
    if (taps < 1) throw InvalidConfig("taps must be >= 1");
  }
};

struct FilterState {
  Vector w;

  static FilterState zeros(std::size_t taps) { return FilterState{Vector(taps, 0.0)}; }
};

struct StepRecord {
  std::size_t k = 0;
  Vector x;
  double d = 0.0;
  double e = 0.0;
  double mu_bar = 0.0;  // 0 on skipped iterations
  int f = 0;
  double alpha = 0.0;
  bool updated = false;
  Vector w;       // coefficients before the step
  Vector w_next;  // coefficients after the step
};

struct StepResult {
  FilterState state;
  StepRecord record;
};

inline double error(const FilterState& state, std::span<const double> x, double d) {
  require_same_size("error", state.w.size(), x.size());
  return d - dot<double>(std::span<const double>(state.w), x);
}

// Returns 1 - gamma_bar/|e|. Guard: e == 0 yields 0, since that point is
// only reachable with f == 0 (or gamma_bar == 0 and nothing to correct).
inline double mu_bar(double e, double gamma_bar) noexcept {
  if (e == 0.0) return 0.0;
  return 1.0 - gamma_bar / std::abs(e);
}

inline int indicator(double e, double gamma_bar) noexcept {
  return std::abs(e) > gamma_bar ? 1 : 0;
}

inline double alpha(std::span<const double> x, double delta) {
  if (!(delta > 0.0)) throw InvalidConfig("delta must be > 0");
  return squared_norm<double>(x) + delta;
}

namespace detail {

inline void check_step_inputs(const char* op, const FilterState& state, std::span<const double> x,
                              double d, std::size_t taps) {
  require_same_size(op, taps, x.size());
  require_same_size(op, taps, state.w.size());
  if (!all_finite<double>(x) || !std::isfinite(d)) {
    throw NonFiniteSample(std::string(op) + ": non-finite input sample");
  }
  if (!all_finite<double>(std::span<const double>(state.w))) {
    throw NonFiniteSample(std::string(op) + ": non-finite coefficient");
  }
}

inline Vector axpy(const Vector& w, double scale, std::span<const double> x) {
  Vector out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] + scale * x[i];
  return out;
}

}  // namespace detail

inline StepResult sm_nlms_step(const FilterState& state, std::span<const double> x, double d,
                               const FilterConfig& config, std::size_t k) {
  config.validate();
  detail::check_step_inputs("sm_nlms_step", state, x, d, config.taps);

  StepRecord rec;
  rec.k = k;
  rec.x.assign(x.begin(), x.end());
  rec.d = d;
  rec.e = error(state, x, d);
  rec.alpha = alpha(x, config.delta);
  rec.f = indicator(rec.e, config.gamma_bar);
  rec.updated = rec.f == 1;
  rec.w = state.w;

  if (!rec.updated) {
    rec.mu_bar = 0.0;
    rec.w_next = state.w;
  } else {
    rec.mu_bar = mu_bar(rec.e, config.gamma_bar);
    rec.w_next = detail::axpy(state.w, (rec.mu_bar / rec.alpha) * rec.e, x);
  }
  FilterState next{rec.w_next};
  return StepResult{std::move(next), std::move(rec)};
}

inline StepResult nlms_step(const FilterState& state, std::span<const double> x, double d,
                            double step, double delta, std::size_t k) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidConfig("NLMS step must be > 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidConfig("delta must be > 0");
  detail::check_step_inputs("nlms_step", state, x, d, state.w.size());

  StepRecord rec;
  rec.k = k;
  rec.x.assign(x.begin(), x.end());
  rec.d = d;
  rec.e = error(state, x, d);
  rec.alpha = alpha(x, delta);
  rec.f = 1;
  rec.updated = true;
  rec.mu_bar = step;
  rec.w = state.w;
  rec.w_next = detail::axpy(state.w, (step / rec.alpha) * rec.e, x);
  FilterState next{rec.w_next};
  return StepResult{std::move(next), std::move(rec)};
}

}  // namespace smnlms
