#ifndef BBM_OBSERVABLES_HPP
#define BBM_OBSERVABLES_HPP

#include <span>
#include <vector>

#include "bbm/point_measure.hpp"
#include "bbm/simulator.hpp"
#include "bbm/stats.hpp"

namespace bbm::obs {

/// Median centering of the type-2 maximum: sqrt(2) t - log(t) / (2 sqrt(2)).
/// Requires t >= 1 (the log correction is meaningless below).
double median_type2(double t);

/// Single-type (Bramson) centering: sqrt(2) t - 3 log(t) / (2 sqrt(2)).
double median_type1(double t);

/// Cascade centering sqrt(2) t + (-3/(2 sqrt 2) + (k-1)/sqrt 2) log t;
/// coincides with median_type1 at k = 1 and median_type2 at k = 2.
double median_typek(double t, int k);

/// Maximum position among particles of the given type; throws
/// EmptyTypeError when no such particle exists.
double max_position(const sim::PopulationSnapshot& snapshot, int type);

struct MartingaleRecord {
  double time = 0.0;
  double z = 0.0;  // derivative martingale
  double w = 0.0;  // additive martingale (mean one)
};

/// Z = sum over type-1 particles of (sqrt(2) t - x) e^{sqrt(2) x - 2t},
/// W = sum of e^{sqrt(2) x - 2t}.
MartingaleRecord derivative_martingale(const sim::PopulationSnapshot& snapshot);

/// Atoms x - centering over particles of the given type.
PointMeasure extremal_process(const sim::PopulationSnapshot& snapshot, int type,
                              double centering);

/// Sample mean and standard error of exp(-<E, phi>) over replicas (>= 2).
stats::MeanStderr empirical_laplace(std::span<const PointMeasure> replicas,
                                    const TestFunction& phi);

struct GumbelFit {
  double location = 0.0;
  double scale = 1.0;
  double ks_statistic = 0.0;
};

/// Maximum-likelihood Gumbel (max-form) fit by Newton iteration on the
/// profile scale equation, tolerance 1e-10. Requires >= 100 samples;
/// throws DegenerateSampleError on constant input.
GumbelFit fit_gumbel(std::span<const double> samples);

double gumbel_cdf(double x, double location, double scale);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

/// OLS fit of (statistic - sqrt(2) t) against log t; the slope estimates
/// the log-correction coefficient. Requires >= 3 distinct t values.
RegressionResult log_correction_regression(
    std::span<const std::pair<double, double>> pairs);

}  // namespace bbm::obs

#endif
