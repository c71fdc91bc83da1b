#include "bbm/wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bbm/errors.hpp"

namespace bbm::fkpp {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct State {
  double w;
  double p;  // w'
};

// w'' = -2 sqrt(2) w' + 2 w (1 - w)
State deriv(const State& s) { return {s.p, -2.0 * kSqrt2 * s.p + 2.0 * s.w * (1.0 - s.w)}; }

State rk4(const State& s, double h) {
  const State k1 = deriv(s);
  const State k2 = deriv({s.w + 0.5 * h * k1.w, s.p + 0.5 * h * k1.p});
  const State k3 = deriv({s.w + 0.5 * h * k2.w, s.p + 0.5 * h * k2.p});
  const State k4 = deriv({s.w + h * k3.w, s.p + h * k3.p});
  return {s.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
          s.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

struct PhiState {
  double f;
  double fp;
};

// phi'' = 2 e^{-sqrt(2) x} phi^2, x in recentred coordinates.
PhiState phi_deriv(const PhiState& s, double x) {
  return {s.fp, 2.0 * std::exp(-kSqrt2 * x) * s.f * s.f};
}

PhiState phi_rk4(const PhiState& s, double x, double h) {
  const PhiState k1 = phi_deriv(s, x);
  const PhiState k2 = phi_deriv({s.f + 0.5 * h * k1.f, s.fp + 0.5 * h * k1.fp}, x + 0.5 * h);
  const PhiState k3 = phi_deriv({s.f + 0.5 * h * k2.f, s.fp + 0.5 * h * k2.fp}, x + 0.5 * h);
  const PhiState k4 = phi_deriv({s.f + h * k3.f, s.fp + h * k3.fp}, x + h);
  return {s.f + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f),
          s.fp + h / 6.0 * (k1.fp + 2.0 * k2.fp + 2.0 * k3.fp + k4.fp)};
}

// Five-point first derivative of ys at index i with stride m.
double fd5(const std::vector<double>& ys, std::size_t i, std::size_t m, double H) {
  return (ys[i - 2 * m] - 8.0 * ys[i - m] + 8.0 * ys[i + m] - ys[i + 2 * m]) / (12.0 * H);
}

}  // namespace

TravellingWave solve_travelling_wave(double tolerance, double h) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve_travelling_wave: tolerance > 0");
  if (!(h > 0.0 && h <= 0.01)) throw std::invalid_argument("solve_travelling_wave: bad step");

  // Depart along the unstable manifold of the saddle at w = 0:
  // eigenvalue 2 - sqrt(2).
  const double lambda = 2.0 - kSqrt2;
  const double delta = 1e-9;
  std::vector<double> w{delta}, wp{lambda * delta};
  State s{delta, lambda * delta};
  const double q_switch = 1e-3;
  const std::size_t max_steps = static_cast<std::size_t>(200.0 / h);
  std::size_t half_idx = 0;
  while (s.w < 1.0 - q_switch) {
    s = rk4(s, h);
    if (!(s.p > 0.0) || s.w > 1.0 || w.size() > max_steps)
      throw ConvergenceError("travelling wave: departure from the heteroclinic orbit");
    w.push_back(s.w);
    wp.push_back(s.p);
    if (half_idx == 0 && s.w >= 0.5) half_idx = w.size() - 1;
  }

  // Shift so the interpolated half-crossing sits at x = 0.
  const double frac = (0.5 - w[half_idx - 1]) / (w[half_idx] - w[half_idx - 1]);
  const double x_half = (static_cast<double>(half_idx - 1) + frac) * h;

  TravellingWave out;
  out.h = h;
  out.x_lo = -x_half;
  out.x_mid = static_cast<double>(w.size() - 1) * h - x_half;
  out.w = std::move(w);
  out.wp = std::move(wp);

  // Tail continuation in phi coordinates (recentred).
  const double tail_span = 30.0;
  const std::size_t tail_steps = static_cast<std::size_t>(std::llround(tail_span / h));
  PhiState ps;
  ps.f = (1.0 - s.w) * std::exp(kSqrt2 * out.x_mid);
  ps.fp = std::exp(kSqrt2 * out.x_mid) * (kSqrt2 * (1.0 - s.w) - s.p);
  out.phi.reserve(tail_steps + 1);
  out.phip.reserve(tail_steps + 1);
  out.phi.push_back(ps.f);
  out.phip.push_back(ps.fp);
  for (std::size_t i = 0; i < tail_steps; ++i) {
    const double x = out.x_mid + static_cast<double>(i) * h;
    ps = phi_rk4(ps, x, h);
    if (!(ps.f > 0.0))
      throw ConvergenceError("travelling wave: tail representation left the cone");
    out.phi.push_back(ps.f);
    out.phip.push_back(ps.fp);
  }
  out.x_hi = out.x_mid + static_cast<double>(tail_steps) * h;

  // ODE defect. On the w-segment use a five-point derivative of w'; on the
  // tail segment the defect of the original equation is
  // e^{-sqrt(2) x} |phi''/2 - e^{-sqrt(2) x} phi^2|.
  const std::size_t m = static_cast<std::size_t>(std::llround(0.005 / h));
  const double H = static_cast<double>(m) * h;
  double worst = 0.0;
  for (std::size_t i = 2 * m; i + 2 * m < out.w.size(); i += m) {
    const double wpp = fd5(out.wp, i, m, H);
    const double r = 0.5 * wpp + kSqrt2 * out.wp[i] + out.w[i] * (out.w[i] - 1.0);
    worst = std::max(worst, std::abs(r));
  }
  for (std::size_t i = 2 * m; i + 2 * m < out.phi.size(); i += m) {
    const double x = out.x_mid + static_cast<double>(i) * h;
    const double fpp = fd5(out.phip, i, m, H);
    const double r = std::exp(-kSqrt2 * x) *
                     (0.5 * fpp - std::exp(-kSqrt2 * x) * out.phi[i] * out.phi[i]);
    worst = std::max(worst, std::abs(r));
  }
  out.max_residual = worst;
  if (worst > tolerance)
    throw ConvergenceError("travelling wave: residual " + std::to_string(worst) +
                           " above tolerance");
  return out;
}

double TravellingWave::eval_one_minus(double x) const {
  if (x <= x_mid) return 1.0 - eval(x);
  const double pos = (x - x_mid) / h;
  const std::size_t n = phi.size();
  if (pos >= static_cast<double>(n - 1)) {
    // Linear tail of phi beyond the stored range.
    const double f = phi[n - 1] + phip[n - 1] * (x - x_hi);
    return f * std::exp(-kSqrt2 * x);
  }
  const std::size_t i = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(i);
  const double val = phi[i] + f * (phi[i + 1] - phi[i]);
  return val * std::exp(-kSqrt2 * x);
}

double TravellingWave::eval(double x) const {
  if (x > x_mid) return 1.0 - eval_one_minus(x);
  const double pos = (x - x_lo) / h;
  if (pos <= 0.0) return w.front() * std::exp((2.0 - kSqrt2) * (x - x_lo));
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= w.size()) return w.back();
  const double f = pos - static_cast<double>(i);
  return w[i] + f * (w[i + 1] - w[i]);
}

double TravellingWave::eval_derivative(double x) const {
  if (x <= x_mid) {
    const double pos = (x - x_lo) / h;
    if (pos <= 0.0) return wp.front();
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= wp.size()) return wp.back();
    const double f = pos - static_cast<double>(i);
    return wp[i] + f * (wp[i + 1] - wp[i]);
  }
  const double pos = (x - x_mid) / h;
  const std::size_t i = std::min(static_cast<std::size_t>(pos), phi.size() - 2);
  const double f = pos - static_cast<double>(i);
  const double fv = phi[i] + f * (phi[i + 1] - phi[i]);
  const double fpv = phip[i] + f * (phip[i + 1] - phip[i]);
  // w' = e^{-sqrt(2) x} (sqrt(2) phi - phi')
  return std::exp(-kSqrt2 * x) * (kSqrt2 * fv - fpv);
}

}  // namespace bbm::fkpp
