#ifndef BBM_ESTIMATES_HPP
#define BBM_ESTIMATES_HPP

#include <optional>
#include <string>
#include <vector>

#include "bbm/rng.hpp"
#include "bbm/test_function.hpp"

namespace bbm::est {

/// Non-negative functional of a path on [0, t]: an optional stay-below-line
/// indicator, an optional endpoint-interval indicator and an optional
/// bounded endpoint weight, multiplied together. Evaluable exactly on both
/// simulated BBM lineages (with Brownian-bridge crossing corrections) and on
/// Gaussian closed forms.
struct LineBarrier {
  double intercept = 0.0;  // stay below intercept + slope * s
  double slope = 0.0;
};

struct PathFunctional {
  std::optional<LineBarrier> stay_below;
  std::optional<std::pair<double, double>> endpoint_in;
  std::optional<TestFunction> endpoint_value;

  bool trivial() const { return !stay_below && !endpoint_in && !endpoint_value; }
};

/// Exact E[f(B_s, s <= t)] for a standard Brownian motion from 0 (killed
/// density in closed form, endpoint profile by adaptive quadrature).
/// A stay-below barrier must start strictly above 0.
double brownian_expectation(const PathFunctional& f, double t, double tol = 1e-10);

struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double lhs_stderr = 0.0;
  double rhs = 0.0;
  double rhs_stderr = 0.0;
  double z_score = 0.0;
  bool passed = false;  // |z_score| <= 3
};

/// Two-sided agreement report; z = (lhs - rhs) / combined stderr.
CheckReport agreement_report(std::string name, double lhs, double lhs_se, double rhs,
                             double rhs_se);
/// One-sided envelope report (lhs should not exceed rhs); z is the positive
/// part of the standardized excess.
CheckReport envelope_report(std::string name, double lhs, double lhs_se, double rhs,
                            double rhs_se);
/// Interval membership report: z = (lhs - centre) / (halfwidth / 3).
CheckReport interval_report(std::string name, double lhs, double centre, double halfwidth);

struct McConfig {
  int replicas = 100000;
  std::uint64_t seed = 7;
  std::uint64_t stream_base = 0;
  int threads = 0;  // 0 = default_threads()
};

/// Many-to-one: E[sum_u f(lineage of u)] at time t versus e^t E[f(B)].
CheckReport verify_many_to_one(double t, const PathFunctional& f, const McConfig& mc);

/// Multitype many-to-one over founders born by tau versus
/// alpha int_0^tau e^{beta s} E[f(B on [0,s])] ds. beta defaults to 1; other
/// values are accepted so the identity can be falsified.
CheckReport verify_multitype_many_to_one(double tau, const PathFunctional& f, double alpha,
                                         const McConfig& mc, double beta = 1.0);

/// Closed form P(B_s >= -y, s <= t) = 2 Phi(y / sqrt t) - 1.
double reflection_probability(double y, double t);

/// Monte Carlo barrier survival (time step `dt` with Brownian-bridge
/// crossing corrections) against the closed form.
CheckReport verify_reflection(double y, double t, const McConfig& mc, double dt = 1e-3);

/// Transition density of the 3-dimensional Bessel process started from x.
double bessel_density(double s, double x, double z);

/// Integral of bessel_density over z, which should be 1.
CheckReport check_bessel_normalization(double s, double x, double tol = 1e-8);

/// h-transform: E_x(g(B_t) 1{B stays > 0}) versus E_x((x / R_t) g(R_t)),
/// both sides sampled exactly (no time grid); g must be endpoint-only.
CheckReport verify_h_transform(const PathFunctional& g, double x, double t,
                               const McConfig& mc);

/// All-time upper barrier: P(exists s <= horizon, u: X_u(s) >= sqrt(2) s + K)
/// against the envelope C (K+1) e^{-sqrt(2) K} with C fitted at K = 1.
/// Produces envelope reports for K = 2, 3, 4, a monotonicity report and the
/// log-slope interval report.
std::vector<CheckReport> check_barrier_bound(double horizon, const McConfig& mc);

/// Tail of the type-1 maximum at time t against C (1+y) e^{-sqrt(2) y - y^2/2t}
/// with C fitted at y = 0; y = 1, 2, 3.
std::vector<CheckReport> check_max_tail(double t, const McConfig& mc);

/// Ballot-type bound P(B_s <= K, s <= t, B_t > K - y) <= C (1+K)(1+y)/(t+1)^{3/2}
/// with C fitted from the closed form at (1,1,4) and Monte Carlo at (2,2,9);
/// also reports MC agreement with the closed form.
std::vector<CheckReport> check_ballot_bound(const McConfig& mc);

/// The golden-seed suite: every report the spec's default table requires.
std::vector<CheckReport> golden_suite(std::uint64_t seed, int threads = 0);

}  // namespace bbm::est

#endif
