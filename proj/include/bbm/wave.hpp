#ifndef BBM_WAVE_HPP
#define BBM_WAVE_HPP

#include <vector>

namespace bbm::fkpp {

/// Critical travelling wave of 1/2 w'' + sqrt(2) w' + w(w - 1) = 0 with
/// w(-inf) = 0, w(+inf) = 1, normalized so w(0) = 1/2.
///
/// The profile is integrated once along the unstable manifold of the w = 0
/// saddle; past x_mid the tail is carried as phi(x) = (1 - w) e^{sqrt(2) x},
/// which satisfies phi'' = 2 e^{-sqrt(2) x} phi^2 and keeps the tail
/// accurate in relative terms down to 1 - w ~ 1e-14.
struct TravellingWave {
  double h = 0.0;      // grid step of both segments
  double x_lo = 0.0;   // left end of the w-segment
  double x_mid = 0.0;  // hand-over point between representations
  double x_hi = 0.0;   // right end of the phi-segment
  std::vector<double> w, wp;      // on [x_lo, x_mid]
  std::vector<double> phi, phip;  // on [x_mid, x_hi]
  double max_residual = 0.0;      // sup ODE defect over both segments

  double eval(double x) const;            // w(x)
  double eval_one_minus(double x) const;  // 1 - w(x), accurate in the tail
  double eval_derivative(double x) const;
};

/// Integrates the wave and verifies the ODE defect against `tolerance`
/// (throws ConvergenceError if it cannot be met). `h` is the RK4 step.
TravellingWave solve_travelling_wave(double tolerance = 1e-8, double h = 1e-3);

}  // namespace bbm::fkpp

#endif
