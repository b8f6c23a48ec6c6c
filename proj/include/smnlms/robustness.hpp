#pragma once

// Per-iteration and whole-run verification of the l2-robustness bounds of
// SM-NLMS in a system-identification setting d(k) = w0'x(k) + n(k).
//
// Local bound, per audited step with gain = mu_bar f / alpha:
//
//   g1 = ||w~(k+1)||^2 + gain e~(k)^2
//   g2 = ||w~(k)||^2   + gain n(k)^2
//   g1 = g2 + c1 c2,  c1 = gain (e~ + n)^2,  c2 = gain ||x||^2 - 1
//
// so g1 == g2 when f = 0 and g1 < g2 when f = 1 (c1 > 0, c2 < 0).
//
// Global bound over k = 0..K-1, with K_up the updated iterations:
//
//   ||w~(K)||^2 + sum_{K_up} gain e~^2  <  ||w~(0)||^2 + sum_{K_up} gain n^2

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smnlms/error.hpp"
#include "smnlms/filter_core.hpp"
#include "smnlms/vector_ops.hpp"

namespace smnlms {

inline constexpr double kIdentityRelTol = 1e-9;
inline constexpr double kConsistencyTol = 1e-12;

struct TruthContext {
  Vector w0;
  Vector noise;  // n(k), indexed by k
};

enum class ViolationKind {
  kEqualityCase,    // f = 0 but the deviation norm or g1/g2 changed
  kSignStructure,   // f = 1 but c1 <= 0, c2 >= 0 or ||x||^2/alpha outside [0, 1)
  kLocalBound,      // f = 1 but g1 exceeds g2 beyond tolerance
  kIdentity,        // |g1 - g2 - c1 c2| above tolerance
  kConsistency,     // e~ + n disagrees with the recorded e
  kGlobalBound,     // ratio >= 1 with a nonzero denominator
};

inline const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::kEqualityCase: return "equality-case";
    case ViolationKind::kSignStructure: return "sign-structure";
    case ViolationKind::kLocalBound: return "local-bound";
    case ViolationKind::kIdentity: return "identity";
    case ViolationKind::kConsistency: return "consistency";
    case ViolationKind::kGlobalBound: return "global-bound";
  }
  return "unknown";
}

struct Violation {
  std::size_t k = 0;
  ViolationKind kind = ViolationKind::kIdentity;
  double value = 0.0;  // offending quantity (residual, margin, ratio ...)
};

struct RobustnessRecord {
  std::size_t k = 0;
  double w_tilde_sq_pre = 0.0;
  double w_tilde_sq_post = 0.0;
  double e_tilde = 0.0;
  double n = 0.0;
  double gain = 0.0;  // mu_bar f / alpha
  double g1 = 0.0;
  double g2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double x_energy_ratio = 0.0;  // ||x||^2 / alpha
  int f = 0;
  std::vector<Violation> violations;

  double identity_residual() const noexcept { return g1 - g2 - c1 * c2; }
  double margin() const noexcept { return -(c1 * c2); }
};

struct AuditOptions {
  // Off for the NLMS baseline: its records are traced, not bound-checked.
  bool check_bounds = true;
};

inline Vector deviation(const Vector& w0, const Vector& w) {
  require_same_size("deviation", w0.size(), w.size());
  Vector out(w0.size());
  for (std::size_t i = 0; i < w0.size(); ++i) out[i] = w0[i] - w[i];
  return out;
}

struct ErrorDecomposition {
  double e_tilde = 0.0;  // noiseless error w~'x
  double e = 0.0;        // e~ + n
};

inline ErrorDecomposition decompose_error(const Vector& w_tilde, std::span<const double> x, double n) {
  require_same_size("decompose_error", w_tilde.size(), x.size());
  const double e_tilde = dot<double>(std::span<const double>(w_tilde), x);
  return {e_tilde, e_tilde + n};
}

inline RobustnessRecord audit_step(const TruthContext& ctx, const StepRecord& rec,
                                   AuditOptions options = {}) {
  require_same_size("audit_step", ctx.w0.size(), rec.x.size());
  require_same_size("audit_step", ctx.w0.size(), rec.w.size());
  require_same_size("audit_step", ctx.w0.size(), rec.w_next.size());
  if (rec.k >= ctx.noise.size()) {
    throw ContextMismatch("audit_step: no noise sample for iteration " + std::to_string(rec.k));
  }

  RobustnessRecord out;
  out.k = rec.k;
  out.f = rec.f;
  out.n = ctx.noise[rec.k];

  const double d_model = dot(ctx.w0, rec.x) + out.n;
  if (!(std::abs(rec.d - d_model) <= kConsistencyTol * std::max(1.0, std::abs(rec.d)))) {
    throw ContextMismatch("audit_step: d(k) != w0'x(k) + n(k) at iteration " +
                          std::to_string(rec.k));
  }

  const Vector w_tilde_pre = deviation(ctx.w0, rec.w);
  const Vector w_tilde_post = deviation(ctx.w0, rec.w_next);
  out.w_tilde_sq_pre = squared_norm(w_tilde_pre);
  out.w_tilde_sq_post = squared_norm(w_tilde_post);

  const ErrorDecomposition parts = decompose_error(w_tilde_pre, rec.x, out.n);
  out.e_tilde = parts.e_tilde;

  const double x_sq = squared_norm(rec.x);
  out.gain = (rec.mu_bar * rec.f) / rec.alpha;
  out.g1 = out.w_tilde_sq_post + out.gain * (out.e_tilde * out.e_tilde);
  out.g2 = out.w_tilde_sq_pre + out.gain * (out.n * out.n);
  // c1 uses the e that set f; e~ + n agrees with it only to rounding, and at
  // convergence the reconstruction can cancel to exactly zero.
  out.c1 = out.gain * (rec.e * rec.e);
  out.c2 = out.gain * x_sq - 1.0;
  out.x_energy_ratio = x_sq / rec.alpha;

  auto flag = [&](ViolationKind kind, double value) {
    out.violations.push_back(Violation{rec.k, kind, value});
  };

  if (!(std::abs(parts.e - rec.e) <= kConsistencyTol * std::max(1.0, std::abs(rec.e)))) {
    flag(ViolationKind::kConsistency, parts.e - rec.e);
  }
  if (!options.check_bounds) return out;

  const double tol = kIdentityRelTol * std::max(1.0, out.g2);

  if (out.f == 0) {
    if (out.w_tilde_sq_post != out.w_tilde_sq_pre || out.g1 != out.g2) {
      flag(ViolationKind::kEqualityCase, out.g1 - out.g2);
    }
  } else {
    if (!(out.c1 > 0.0) || !(out.c2 < 0.0) || !(out.x_energy_ratio >= 0.0) ||
        !(out.x_energy_ratio < 1.0)) {
      flag(ViolationKind::kSignStructure, out.margin());
    }
    // Strictness is carried by margin() > 0 above; the floating comparison of
    // g1 and g2 gets the identity tolerance, since with gamma_bar = 0 the
    // exact margin e^2 delta / alpha^2 can sit below the rounding of g1.
    if (!(out.g1 - out.g2 <= tol)) flag(ViolationKind::kLocalBound, out.g1 - out.g2);
  }
  const double residual = out.identity_residual();
  if (!(std::abs(residual) <= tol)) {
    flag(ViolationKind::kIdentity, residual);
  }
  return out;
}

struct GlobalReport {
  std::size_t K = 0;
  std::size_t update_count = 0;
  double initial_w_tilde_sq = 0.0;
  double final_w_tilde_sq = 0.0;
  double error_energy = 0.0;  // sum over K_up of gain e~^2
  double noise_energy = 0.0;  // sum over K_up of gain n^2
  double numerator = 0.0;
  double denominator = 0.0;
  std::optional<double> ratio;  // empty when the denominator is zero

  // With no updates every step is an equality case and the ratio is exactly 1.
  bool bound_holds() const noexcept {
    if (!ratio) return true;
    return update_count == 0 ? *ratio == 1.0 : *ratio < 1.0;
  }
  double update_fraction() const noexcept {
    return K == 0 ? 0.0 : static_cast<double>(update_count) / static_cast<double>(K);
  }
};

inline GlobalReport global_report(std::span<const RobustnessRecord> records, double w_tilde_sq_0) {
  GlobalReport rep;
  rep.K = records.size();
  rep.initial_w_tilde_sq = w_tilde_sq_0;
  rep.final_w_tilde_sq = records.empty() ? w_tilde_sq_0 : records.back().w_tilde_sq_post;

  CompensatedSum err, noise;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RobustnessRecord& r = records[i];
    if (r.k != i) {
      throw NonContiguousRecords("global_report: expected iteration " + std::to_string(i) +
                                 ", found " + std::to_string(r.k));
    }
    if (r.f != 1) continue;
    ++rep.update_count;
    err.add(r.gain * (r.e_tilde * r.e_tilde));
    noise.add(r.gain * (r.n * r.n));
  }
  rep.error_energy = err.value();
  rep.noise_energy = noise.value();
  rep.numerator = rep.final_w_tilde_sq + rep.error_energy;
  rep.denominator = rep.initial_w_tilde_sq + rep.noise_energy;
  if (rep.denominator != 0.0) rep.ratio = rep.numerator / rep.denominator;
  return rep;
}

// Membership in the constraint set of one data pair: |d - w'x| <= gamma_bar.
inline bool in_constraint_set(const Vector& w, std::span<const double> x, double d, double gamma_bar) {
  require_same_size("in_constraint_set", w.size(), x.size());
  return std::abs(d - dot<double>(std::span<const double>(w), x)) <= gamma_bar;
}

struct DataPair {
  Vector x;
  double d = 0.0;
};

// Membership in the intersection of all recorded constraint sets. O(history).
inline bool in_membership_set(const Vector& w, std::span<const DataPair> history, double gamma_bar) {
  bool inside = true;
  for (const DataPair& p : history) {
    // Keep scanning after a miss so dimension errors anywhere are reported.
    inside = in_constraint_set(w, p.x, p.d, gamma_bar) && inside;
  }
  return inside;
}

}  // namespace smnlms
