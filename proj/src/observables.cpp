#include "bbm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bbm::obs {

using sim::kSqrt2;

namespace {
void require_t(double t) {
  if (!(t >= 1.0))
    throw std::invalid_argument("median centering requires t >= 1");
}
}  // namespace

double median_type2(double t) {
  require_t(t);
  return kSqrt2 * t - std::log(t) / (2.0 * kSqrt2);
}

double median_type1(double t) {
  require_t(t);
  return kSqrt2 * t - 3.0 * std::log(t) / (2.0 * kSqrt2);
}

double median_typek(double t, int k) {
  require_t(t);
  if (k < 1) throw std::invalid_argument("median_typek: k must be >= 1");
  const double coeff = -3.0 / (2.0 * kSqrt2) + (k - 1) / kSqrt2;
  return kSqrt2 * t + coeff * std::log(t);
}

double max_position(const sim::PopulationSnapshot& snapshot, int type) {
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& p : snapshot.particles) {
    if (p.type != type) continue;
    found = true;
    best = std::max(best, p.position);
  }
  if (!found)
    throw EmptyTypeError("max_position: no particle of type " + std::to_string(type));
  return best;
}

MartingaleRecord derivative_martingale(const sim::PopulationSnapshot& snapshot) {
  MartingaleRecord rec;
  rec.time = snapshot.time;
  const double t = snapshot.time;
  for (const auto& p : snapshot.particles) {
    if (p.type != 1) continue;
    const double w = std::exp(kSqrt2 * p.position - 2.0 * t);
    rec.w += w;
    rec.z += (kSqrt2 * t - p.position) * w;
  }
  return rec;
}

PointMeasure extremal_process(const sim::PopulationSnapshot& snapshot, int type,
                              double centering) {
  PointMeasure e;
  for (const auto& p : snapshot.particles)
    if (p.type == type) e.atoms.push_back(p.position - centering);
  return e;
}

stats::MeanStderr empirical_laplace(std::span<const PointMeasure> replicas,
                                    const TestFunction& phi) {
  if (replicas.size() < 2)
    throw std::invalid_argument("empirical_laplace: need >= 2 replicas");
  std::vector<double> vals;
  vals.reserve(replicas.size());
  for (const auto& e : replicas) vals.push_back(std::exp(-laplace_pairing(e, phi)));
  return stats::mean_stderr(vals);
}

double gumbel_cdf(double x, double location, double scale) {
  return std::exp(-std::exp(-(x - location) / scale));
}

GumbelFit fit_gumbel(std::span<const double> samples) {
  if (samples.size() < 100)
    throw std::invalid_argument("fit_gumbel: need >= 100 samples");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  if (*mx - *mn <= 0.0)
    throw DegenerateSampleError("fit_gumbel: constant sample");

  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= (n - 1.0);

  // Profile likelihood: beta = mean(x) - sum(x e^{-x/beta}) / sum(e^{-x/beta}).
  // Shift by the sample mean for exponent stability; ratios are unchanged.
  const auto weighted = [&](double beta, double& s0, double& s1, double& s2) {
    s0 = s1 = s2 = 0.0;
    for (double x : samples) {
      const double z = x - mean;
      const double w = std::exp(-z / beta);
      s0 += w;
      s1 += z * w;
      s2 += z * z * w;
    }
  };

  double beta = std::sqrt(6.0 * var) / std::numbers::pi;  // moment start
  for (int iter = 0; iter < 200; ++iter) {
    double s0, s1, s2;
    weighted(beta, s0, s1, s2);
    const double g = beta + s1 / s0;  // == beta - mean + weighted mean of x
    const double gp = 1.0 + (s2 * s0 - s1 * s1) / (beta * beta * s0 * s0);
    const double step = g / gp;
    beta -= step;
    if (!(beta > 0.0))
      throw DegenerateSampleError("fit_gumbel: Newton left the domain");
    if (std::abs(g) < 1e-10 && std::abs(step) < 1e-12 * std::max(1.0, beta)) break;
  }
  double s0, s1, s2;
  weighted(beta, s0, s1, s2);

  GumbelFit fit;
  fit.scale = beta;
  fit.location = mean - beta * std::log(s0 / n);
  fit.ks_statistic = stats::ks_statistic(
      samples, [&](double x) { return gumbel_cdf(x, fit.location, fit.scale); });
  return fit;
}

RegressionResult log_correction_regression(
    std::span<const std::pair<double, double>> pairs) {
  std::set<double> distinct;
  for (const auto& [t, s] : pairs) distinct.insert(t);
  if (distinct.size() < 3)
    throw std::invalid_argument("log_correction_regression: need >= 3 distinct t");
  std::vector<double> x, y;
  x.reserve(pairs.size());
  y.reserve(pairs.size());
  for (const auto& [t, s] : pairs) {
    if (!(t > 0.0)) throw std::invalid_argument("log_correction_regression: t must be > 0");
    x.push_back(std::log(t));
    y.push_back(s - kSqrt2 * t);
  }
  const auto ols = stats::ols_fit(x, y);
  return {ols.slope, ols.intercept, ols.stderr_slope};
}

}  // namespace bbm::obs
