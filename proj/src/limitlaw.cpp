#include "bbm/limitlaw.hpp"

#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/quadrature.hpp"
#include "bbm/simulator.hpp"

namespace bbm::limitlaw {

using sim::kSqrt2;

PointMeasure sample_ppp(const IntensityParams& params, double window_left,
                        RngStream& rng) {
  if (!(params.c > 0.0)) throw std::invalid_argument("sample_ppp: c must be > 0");
  const double mean = params.c * std::exp(-kSqrt2 * window_left);
  const long long n = rng.poisson(mean);
  PointMeasure e;
  e.atoms.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i)
    e.atoms.push_back(window_left + rng.exponential(kSqrt2));
  return e;
}

LaplaceFunctional exact_ppp_laplace(const IntensityParams& params,
                                    const TestFunction& phi, double tol) {
  if (!(params.c > 0.0)) throw std::invalid_argument("exact_ppp_laplace: c must be > 0");
  const auto integrand = [&](double z) {
    return std::exp(-kSqrt2 * z) * (1.0 - std::exp(-phi(z)));
  };
  // Piecewise smooth between knots; integrate each segment separately.
  double integral = 0.0;
  double err = 0.0;
  const auto& knots = phi.knots();
  double left = phi.support_start();
  for (const auto& [x, v] : knots) {
    if (x > left) {
      const auto q = integrate(integrand, left, x, tol);
      integral += q.value;
      err += q.error_estimate;
      left = x;
    }
  }
  // Constant plateau beyond the last knot has an exponential closed form.
  const double tail =
      (1.0 - std::exp(-phi.tail_value())) * std::exp(-kSqrt2 * phi.last_knot_x()) / kSqrt2;
  integral += tail;
  LaplaceFunctional out;
  out.quadrature_error = err;
  out.value = std::exp(-params.c * kSqrt2 * integral);
  return out;
}

std::optional<DecorationSample> try_decoration(double t, double depth, RngStream& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("try_decoration: t must be > 0");
  if (!(depth >= 0.0)) throw std::invalid_argument("try_decoration: depth must be >= 0");
  struct PositionsSink : sim::NullVisitor {
    std::vector<double> xs;
    void on_observation(std::size_t, const sim::Particle& p, const Lineage&) {
      xs.push_back(p.position);
    }
  };
  sim::SimParams params;
  params.alpha = 0.0;
  params.num_types = 1;
  params.t_max = t;
  params.observation_times = {t};
  PositionsSink sink;
  sim::run_replica(params, rng, sink);
  double max = -std::numeric_limits<double>::infinity();
  for (double x : sink.xs) max = std::max(max, x);
  if (max < kSqrt2 * t) return std::nullopt;
  DecorationSample d;
  for (double x : sink.xs) {
    const double rel = x - max;
    if (rel >= -depth) d.relative_atoms.push_back(rel);
  }
  return d;
}

DecorationSample sample_decoration(double t, RngStream& rng, int max_attempts,
                                   double depth) {
  for (int a = 0; a < max_attempts; ++a) {
    auto d = try_decoration(t, depth, rng);
    if (d) return *std::move(d);
  }
  throw SamplingError("sample_decoration: conditioning event M_t >= sqrt(2) t not hit in " +
                      std::to_string(max_attempts) + " attempts");
}

PointMeasure sample_limit_extremal(double z, double alpha_cstar,
                                   DecorationSource& decorations, RngStream& rng,
                                   double window_left, ZShiftConvention convention) {
  if (!(z > 0.0)) throw std::invalid_argument("sample_limit_extremal: Z must be > 0");
  if (!(alpha_cstar > 0.0))
    throw std::invalid_argument("sample_limit_extremal: alphaCstar must be > 0");
  const bool fold = convention == ZShiftConvention::kFoldIntoIntensity;
  const double c = fold ? alpha_cstar * z : alpha_cstar;
  const double shift = fold ? 0.0 : std::log(z) / kSqrt2;
  const PointMeasure ppp = sample_ppp({c}, window_left, rng);
  PointMeasure out;
  for (double xi : ppp.atoms) {
    const DecorationSample d = decorations.sample(rng);
    for (double rel : d.relative_atoms) out.atoms.push_back(xi + rel + shift);
  }
  return out;
}

double shifted_gumbel_cdf(double x, double alpha_cstar,
                          std::span<const double> z_samples) {
  if (z_samples.empty())
    throw std::invalid_argument("shifted_gumbel_cdf: need Z samples");
  double sum = 0.0;
  for (double z : z_samples) {
    if (!(z > 0.0)) throw std::invalid_argument("shifted_gumbel_cdf: Z must be > 0");
    sum += std::exp(-alpha_cstar * z * std::exp(-kSqrt2 * x));
  }
  return sum / static_cast<double>(z_samples.size());
}

}  // namespace bbm::limitlaw
