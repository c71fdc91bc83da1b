#ifndef BBM_STATS_HPP
#define BBM_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bbm/rng.hpp"

namespace bbm::stats {

/// Standard normal CDF.
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// Upper-tail p-value of a chi-square statistic with the given dof.
double chi2_pvalue(double stat, int dof);

/// Kolmogorov distribution tail: P(K > x) for K = lim sqrt(n) D_n.
double kolmogorov_q(double x);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

MeanStderr mean_stderr(std::span<const double> xs);

struct Ols {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares of y on x. Requires >= 3 points.
Ols ols_fit(std::span<const double> x, std::span<const double> y);

/// One-sample KS statistic against a CDF. Sorts a copy of the sample.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Two-sample KS statistic.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Percentile-bootstrap confidence interval for the median.
struct BootstrapCi {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};
BootstrapCi bootstrap_median_ci(std::span<const double> xs, int resamples, double level,
                                RngStream& rng);

double median(std::vector<double> xs);

}  // namespace bbm::stats

#endif
