#include "bbm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bbm::stats {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

namespace {

// Series expansion of the regularized lower incomplete gamma P(a, x), x < a+1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_pvalue(double stat, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi2_pvalue: dof must be positive");
  return gamma_q(0.5 * dof, 0.5 * stat);
}

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - out.mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(xs.size() - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
  return out;
}

Ols ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("ols_fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("ols_fit: need at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate abscissae");
  Ols out;
  out.n = n;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - out.intercept - out.slope * x[i];
    ssr += r * r;
  }
  out.stderr_slope = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  return out;
}

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(f - i / n));
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / xa.size() -
                             static_cast<double>(j) / xb.size()));
  }
  return d;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty sample");
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  if (xs.size() % 2 == 1) return xs[mid];
  const double hi = xs[mid];
  std::nth_element(xs.begin(), xs.begin() + mid - 1, xs.end());
  return 0.5 * (xs[mid - 1] + hi);
}

BootstrapCi bootstrap_median_ci(std::span<const double> xs, int resamples, double level,
                                RngStream& rng) {
  if (xs.empty()) throw std::invalid_argument("bootstrap_median_ci: empty sample");
  std::vector<double> base(xs.begin(), xs.end());
  BootstrapCi out;
  out.point = median(base);
  std::vector<double> meds(resamples);
  std::vector<double> tmp(xs.size());
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      tmp[i] = xs[rng.next_u64() % xs.size()];
    meds[r] = median(tmp);
  }
  std::sort(meds.begin(), meds.end());
  const double a = 0.5 * (1.0 - level);
  const auto idx = [&](double q) {
    const double pos = q * (meds.size() - 1);
    return meds[static_cast<std::size_t>(std::llround(pos))];
  };
  out.lo = idx(a);
  out.hi = idx(1.0 - a);
  return out;
}

}  // namespace bbm::stats
