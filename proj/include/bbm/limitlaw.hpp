#ifndef BBM_LIMITLAW_HPP
#define BBM_LIMITLAW_HPP

#include <optional>
#include <span>

#include "bbm/point_measure.hpp"
#include "bbm/rng.hpp"

namespace bbm::limitlaw {

/// Poisson point process intensity c * sqrt(2) e^{-sqrt(2) x} dx.
struct IntensityParams {
  double c = 1.0;
};

/// Atoms of the PPP restricted to [window_left, inf): the count is Poisson
/// with mean c e^{-sqrt(2) window_left}, positions i.i.d. shifted
/// exponential with rate sqrt(2).
PointMeasure sample_ppp(const IntensityParams& params, double window_left,
                        RngStream& rng);

/// Exact Laplace functional of the undecorated PPP:
/// exp(-c sqrt(2) int e^{-sqrt(2) z} (1 - e^{-phi(z)}) dz), with the integral
/// taken by adaptive quadrature over the support plus an analytic tail for
/// the final plateau. Throws QuadratureError when the tolerance is missed.
struct LaplaceFunctional {
  double value = 1.0;
  double quadrature_error = 0.0;
};
LaplaceFunctional exact_ppp_laplace(const IntensityParams& params,
                                    const TestFunction& phi, double tol = 1e-10);

/// Finite-t sample of the decoration: the cloud seen from the maximum of a
/// standard BBM conditioned on M_t >= sqrt(2) t, truncated `depth` below the
/// leader. Atoms are <= 0 with the leader at exactly 0.
struct DecorationSample {
  std::vector<double> relative_atoms;
};

/// One rejection attempt; empty when the conditioning event fails.
std::optional<DecorationSample> try_decoration(double t, double depth, RngStream& rng);

/// Rejection sampler; throws SamplingError after max_attempts failures.
DecorationSample sample_decoration(double t, RngStream& rng, int max_attempts,
                                   double depth = 8.0);

class DecorationSource {
 public:
  virtual ~DecorationSource() = default;
  virtual DecorationSample sample(RngStream& rng) = 0;
};

/// Single atom at 0.
class DegenerateDecoration final : public DecorationSource {
 public:
  DecorationSample sample(RngStream&) override { return {{0.0}}; }
};

class ConditionedBbmDecoration final : public DecorationSource {
 public:
  ConditionedBbmDecoration(double t, double depth, int max_attempts)
      : t_(t), depth_(depth), max_attempts_(max_attempts) {}
  DecorationSample sample(RngStream& rng) override {
    return sample_decoration(t_, rng, max_attempts_, depth_);
  }

 private:
  double t_;
  double depth_;
  int max_attempts_;
};

/// Whether the 1/sqrt(2) log Z shift of the limiting extremal process is
/// folded into the PPP intensity (c = alphaCstar * Z) or added explicitly to
/// every atom (c = alphaCstar). The two conventions are equal in law;
/// exactly one is applied.
enum class ZShiftConvention { kFoldIntoIntensity, kExplicitLogShift };

/// Decorated-PPP sample of the limiting extremal process for a fixed
/// realization Z > 0 of the derivative martingale limit.
PointMeasure sample_limit_extremal(double z, double alpha_cstar,
                                   DecorationSource& decorations, RngStream& rng,
                                   double window_left,
                                   ZShiftConvention convention =
                                       ZShiftConvention::kFoldIntoIntensity);

/// Mean over Z samples of exp(-alphaCstar Z e^{-sqrt(2) x}): the limiting
/// law of the centred type-2 maximum.
double shifted_gumbel_cdf(double x, double alpha_cstar,
                          std::span<const double> z_samples);

}  // namespace bbm::limitlaw

#endif
