#pragma once

// Test-only reference evaluation of one SM-NLMS step and its robustness
// quantities, in long double, written directly from the deviation form of the
// recursion:
//
//   w~(k+1) = w~(k) - (mu/alpha) e~ x f - (mu/alpha) n x f
//
// It never touches the library's step or audit code.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Step {
  long double e, e_tilde, mu_bar, alpha, gain;
  int f;
  std::vector<long double> w_tilde_next;
  long double w_tilde_sq_pre, w_tilde_sq_post, g1, g2, c1, c2;
};

inline Step evaluate(const std::vector<double>& w0, const std::vector<double>& w,
                     const std::vector<double>& x, double n, double gamma_bar, double delta) {
  const std::size_t m = x.size();
  Step s{};
  std::vector<long double> wt(m);
  long double xx = 0, et = 0, pre = 0;
  for (std::size_t i = 0; i < m; ++i) {
    wt[i] = static_cast<long double>(w0[i]) - w[i];
    xx += static_cast<long double>(x[i]) * x[i];
    et += wt[i] * x[i];
    pre += wt[i] * wt[i];
  }
  s.e_tilde = et;
  s.e = et + n;
  s.alpha = xx + delta;
  s.f = std::fabs(s.e) > gamma_bar ? 1 : 0;
  s.mu_bar = s.f ? 1.0L - gamma_bar / std::fabs(s.e) : 0.0L;
  s.gain = s.mu_bar * s.f / s.alpha;
  s.w_tilde_next.resize(m);
  long double post = 0;
  for (std::size_t i = 0; i < m; ++i) {
    s.w_tilde_next[i] = wt[i] - s.gain * et * x[i] - s.gain * n * x[i];
    post += s.w_tilde_next[i] * s.w_tilde_next[i];
  }
  s.w_tilde_sq_pre = pre;
  s.w_tilde_sq_post = post;
  s.g1 = post + s.gain * et * et;
  s.g2 = pre + s.gain * static_cast<long double>(n) * n;
  s.c1 = s.gain * s.e * s.e;
  s.c2 = s.gain * xx - 1.0L;
  return s;
}

}  // namespace oracle
