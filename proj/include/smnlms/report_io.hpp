#pragma once

// Output formats.
//
// Trace: CSV, one header row then one row per iteration, columns
//   k,e,mu_bar,f,alpha,updated,e_tilde,n,w_tilde_sq_pre,w_tilde_sq_post,g1,g2,c1,c2
// Summary: flat "key: value" lines. Ensemble output separates runs by a blank
// line. Both are UTF-8 with LF endings; reals use 17 significant digits so they
// parse back to the identical double.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <string>

#include "smnlms/error.hpp"
#include "smnlms/sysid.hpp"

namespace smnlms {

inline constexpr const char* kTraceHeader =
    "k,e,mu_bar,f,alpha,updated,e_tilde,n,w_tilde_sq_pre,w_tilde_sq_post,g1,g2,c1,c2";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_trace(std::ostream& os, const RunResult& result) {
  os << kTraceHeader << '\n';
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const StepRecord& s = result.steps[i];
    const RobustnessRecord& a = result.audits[i];
    os << s.k << ',' << format_real(s.e) << ',' << format_real(s.mu_bar) << ',' << s.f << ','
       << format_real(s.alpha) << ',' << (s.updated ? 1 : 0) << ',' << format_real(a.e_tilde)
       << ',' << format_real(a.n) << ',' << format_real(a.w_tilde_sq_pre) << ','
       << format_real(a.w_tilde_sq_post) << ',' << format_real(a.g1) << ',' << format_real(a.g2)
       << ',' << format_real(a.c1) << ',' << format_real(a.c2) << '\n';
  }
}

inline void write_summary(std::ostream& os, const RunResult& result) {
  const ScenarioConfig& c = result.config;
  const GlobalReport& r = result.report;
  os << "algorithm: " << to_string(c.algorithm) << '\n';
  os << "input: " << to_string(c.input) << '\n';
  os << "seed: " << c.seed << '\n';
  os << "taps: " << c.taps << '\n';
  os << "tau: " << format_real(c.tau) << '\n';
  os << "gamma_bar: " << format_real(c.gamma_bar()) << '\n';
  os << "delta: " << format_real(c.delta) << '\n';
  os << "K: " << r.K << '\n';
  os << "update_count: " << r.update_count << '\n';
  os << "update_fraction: " << format_real(r.update_fraction()) << '\n';
  os << "numerator: " << format_real(r.numerator) << '\n';
  os << "denominator: " << format_real(r.denominator) << '\n';
  os << "ratio: " << (r.ratio ? format_real(*r.ratio) : std::string("undefined")) << '\n';
  os << "violations: " << result.violations.size() << '\n';
  if (!result.violations.empty()) {
    const Violation& v = result.violations.front();
    os << "first_violation_k: " << v.k << '\n';
    os << "first_violation_kind: " << to_string(v.kind) << '\n';
    os << "first_violation_value: " << format_real(v.value) << '\n';
  }
  const auto mis = result.final_misalignment();
  os << "final_misalignment: " << (mis ? format_real(*mis) : std::string("undefined")) << '\n';
}

namespace detail {

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace detail

inline void emit_trace(const RunResult& result, const std::string& path) {
  detail::write_file(path, [&](std::ostream& os) { write_trace(os, result); });
}

inline void emit_summary(std::span<const RunResult> results, const std::string& path) {
  detail::write_file(path, [&](std::ostream& os) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (i > 0) os << '\n';
      write_summary(os, results[i]);
    }
  });
}

inline void emit_summary(const RunResult& result, const std::string& path) {
  emit_summary(std::span<const RunResult>(&result, 1), path);
}

}  // namespace smnlms
