#ifndef BBM_TESTS_ORACLE_HELPERS_HPP
#define BBM_TESTS_ORACLE_HELPERS_HPP

// Test-local oracles, kept independent of the library code paths they check.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

inline double phi_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Composite Simpson with a fixed fine grid; plenty for smooth integrands.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 4000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// P(sup_{s<=t} (B_s - mu s) >= a), a > 0.
inline double drifted_sup_tail(double a, double mu, double t) {
  const double sd = std::sqrt(t);
  return (1.0 - phi_cdf((a + mu * t) / sd)) +
         std::exp(-2.0 * mu * a) * (1.0 - phi_cdf((a - mu * t) / sd));
}

/// P(B_s <= K for s <= t, B_t > K - y).
inline double ballot_prob(double k, double y, double t) {
  const double sd = std::sqrt(t);
  return 2.0 * phi_cdf(k / sd) - phi_cdf((k - y) / sd) - phi_cdf((k + y) / sd);
}

}  // namespace oracle

#endif
