#include "bbm/fkpp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bbm/errors.hpp"

namespace bbm::fkpp {

void GridConfig::validate() const {
  if (!(dx > 0.0)) throw std::invalid_argument("GridConfig: dx must be > 0");
  if (!(dt_factor > 0.0 && dt_factor <= 0.5))
    throw std::invalid_argument("GridConfig: dt_factor must be in (0, 0.5] (dt <= dx^2/2)");
  if (!(x_hi > x_lo + 20.0 * dx))
    throw std::invalid_argument("GridConfig: domain too small");
  if (!(frame_speed >= 0.0))
    throw std::invalid_argument("GridConfig: frame_speed must be >= 0");
  // Positive off-diagonal weights in the FTCS stencil.
  if (frame_speed * dx > 1.0)
    throw std::invalid_argument("GridConfig: dx too coarse for the advection term");
}

Solver::Solver(int num_types, double alpha, const GridConfig& grid,
               const std::function<double(double)>& top_initial, bool front_conditions)
    : grid_(grid), k_(num_types), alpha_(alpha) {
  grid_.validate();
  if (k_ < 1) throw std::invalid_argument("Solver: num_types must be >= 1");
  if (!(alpha_ >= 0.0)) throw std::invalid_argument("Solver: alpha must be >= 0");
  n_ = static_cast<std::size_t>(std::llround((grid_.x_hi - grid_.x_lo) / grid_.dx)) + 1;
  dt_ = grid_.dt_factor * grid_.dx * grid_.dx;

  v_.assign(k_, std::vector<double>(n_, 0.0));
  ql_.assign(k_, 0.0);
  qr_.assign(k_, 0.0);
  auto& top = v_[k_ - 1];
  bool has_jump = false;
  for (std::size_t i = 0; i < n_; ++i) {
    top[i] = top_initial(grid_x(i));
    if (!(top[i] >= 0.0 && top[i] <= 1.0))
      throw std::invalid_argument("Solver: initial values must lie in [0,1]");
    if (i > 0 && std::abs(top[i] - top[i - 1]) > 0.2) has_jump = true;
  }
  if (front_conditions) {
    if (!(top[0] > 0.0))
      throw std::invalid_argument("Solver: initial profile needs mass on the left");
    for (std::size_t i = n_ - 5; i < n_; ++i)
      if (top[i] != 0.0)
        throw std::invalid_argument("Solver: initial support must be bounded on the right");
  }
  // The outermost two nodes on each side ride the uniform boundary ODE;
  // the profile must be flat there.
  ql_[k_ - 1] = top[0];
  qr_[k_ - 1] = top[n_ - 1];
  top[1] = top[0];
  top[n_ - 2] = top[n_ - 1];

  // Rough data would ring under the fourth-order stencil; smooth it first
  // with the monotone second-order scheme.
  if (grid_.scheme == GridConfig::Scheme::kCentral4Rk4 && has_jump)
    warmup_until_ = 50.0 * grid_.dx * grid_.dx;

  tmp_ = d1_ = d2_ = d3_ = d4_ = v_;
  qltmp_ = qld1_ = qld2_ = qld3_ = qld4_ = ql_;
  qrtmp_ = qrd1_ = qrd2_ = qrd3_ = qrd4_ = qr_;
}

Solver Solver::heaviside(int num_types, double alpha, const GridConfig& grid) {
  return Solver(num_types, alpha, grid, [](double x) { return x < 0.0 ? 1.0 : 0.0; });
}

const std::vector<double>& Solver::values(int type) const {
  if (type < 1 || type > k_) throw std::invalid_argument("Solver: bad type");
  return v_[type - 1];
}

double Solver::left_boundary(int type) const {
  if (type < 1 || type > k_) throw std::invalid_argument("Solver: bad type");
  return ql_[type - 1];
}

double Solver::right_boundary(int type) const {
  if (type < 1 || type > k_) throw std::invalid_argument("Solver: bad type");
  return qr_[type - 1];
}

namespace {

// Reaction plus cascade coupling for field j (0-based), given the value of
// the next type at the same node (or nullptr for the top type).
inline double reaction(double v, const double* next, std::size_t i, double alpha) {
  double r = v * (1.0 - v);
  if (next) r += alpha * (1.0 - v) * next[i];
  return r;
}

}  // namespace

void Solver::check_field(int type, std::vector<double>& v) {
  for (auto& x : v) {
    if (x < -1e-9 || x > 1.0 + 1e-9)
      throw StabilityError("maximum principle violated for type " + std::to_string(type) +
                           " (value " + std::to_string(x) + " at t=" + std::to_string(time()) +
                           ")");
    x = std::clamp(x, 0.0, 1.0);
  }
}

void Solver::euler_step(double dt) {
  const double cl = 0.5 * dt / (grid_.dx * grid_.dx);
  const double ca = grid_.frame_speed * dt / (2.0 * grid_.dx);
  for (int j = k_ - 1; j >= 0; --j) {
    const double* v = v_[j].data();
    const double* w = j + 1 < k_ ? v_[j + 1].data() : nullptr;
    double* out = tmp_[j].data();
    for (std::size_t i = 2; i + 2 < n_; ++i) {
      out[i] = v[i] + cl * (v[i - 1] - 2.0 * v[i] + v[i + 1]) +
               ca * (v[i + 1] - v[i - 1]) + dt * reaction(v[i], w, i, alpha_);
    }
    const double* qln = j + 1 < k_ ? ql_.data() + j + 1 : nullptr;
    const double* qrn = j + 1 < k_ ? qr_.data() + j + 1 : nullptr;
    qltmp_[j] = ql_[j] + dt * reaction(ql_[j], qln, 0, alpha_);
    qrtmp_[j] = qr_[j] + dt * reaction(qr_[j], qrn, 0, alpha_);
    out[0] = out[1] = qltmp_[j];
    out[n_ - 2] = out[n_ - 1] = qrtmp_[j];
  }
  for (int j = 0; j < k_; ++j) {
    v_[j].swap(tmp_[j]);
    ql_[j] = qltmp_[j];
    qr_[j] = qrtmp_[j];
  }
}

void Solver::rk4_step(double dt) {
  const double inv12dx2 = 0.5 / (12.0 * grid_.dx * grid_.dx);
  const double inv12dx = grid_.frame_speed / (12.0 * grid_.dx);
  // Fused five-point weights of 1/2 d_xx + frame_speed d_x.
  const double w_m2 = -inv12dx2 + inv12dx;
  const double w_m1 = 16.0 * inv12dx2 - 8.0 * inv12dx;
  const double w_0 = -30.0 * inv12dx2;
  const double w_p1 = 16.0 * inv12dx2 + 8.0 * inv12dx;
  const double w_p2 = -inv12dx2 - inv12dx;

  auto eval = [&](const std::vector<std::vector<double>>& f, const std::vector<double>& ql,
                  const std::vector<double>& qr, std::vector<std::vector<double>>& df,
                  std::vector<double>& dql, std::vector<double>& dqr) {
    for (int j = k_ - 1; j >= 0; --j) {
      const double* v = f[j].data();
      const double* w = j + 1 < k_ ? f[j + 1].data() : nullptr;
      double* d = df[j].data();
      for (std::size_t i = 2; i + 2 < n_; ++i) {
        d[i] = w_m2 * v[i - 2] + w_m1 * v[i - 1] + w_0 * v[i] + w_p1 * v[i + 1] +
               w_p2 * v[i + 2] + reaction(v[i], w, i, alpha_);
      }
      dql[j] = reaction(ql[j], j + 1 < k_ ? ql.data() + j + 1 : nullptr, 0, alpha_);
      dqr[j] = reaction(qr[j], j + 1 < k_ ? qr.data() + j + 1 : nullptr, 0, alpha_);
      d[0] = d[1] = dql[j];
      d[n_ - 2] = d[n_ - 1] = dqr[j];
    }
  };

  auto axpy = [&](const std::vector<std::vector<double>>& d, double a,
                  const std::vector<double>& dql, const std::vector<double>& dqr) {
    for (int j = 0; j < k_; ++j) {
      const double* yv = v_[j].data();
      const double* dv = d[j].data();
      double* o = tmp_[j].data();
      for (std::size_t i = 0; i < n_; ++i) o[i] = yv[i] + a * dv[i];
      qltmp_[j] = ql_[j] + a * dql[j];
      qrtmp_[j] = qr_[j] + a * dqr[j];
    }
  };

  eval(v_, ql_, qr_, d1_, qld1_, qrd1_);
  axpy(d1_, 0.5 * dt, qld1_, qrd1_);
  eval(tmp_, qltmp_, qrtmp_, d2_, qld2_, qrd2_);
  axpy(d2_, 0.5 * dt, qld2_, qrd2_);
  eval(tmp_, qltmp_, qrtmp_, d3_, qld3_, qrd3_);
  axpy(d3_, dt, qld3_, qrd3_);
  eval(tmp_, qltmp_, qrtmp_, d4_, qld4_, qrd4_);

  const double c = dt / 6.0;
  for (int j = 0; j < k_; ++j) {
    double* v = v_[j].data();
    const double* a = d1_[j].data();
    const double* b = d2_[j].data();
    const double* cc = d3_[j].data();
    const double* dd = d4_[j].data();
    for (std::size_t i = 0; i < n_; ++i)
      v[i] += c * (a[i] + 2.0 * b[i] + 2.0 * cc[i] + dd[i]);
    ql_[j] += c * (qld1_[j] + 2.0 * qld2_[j] + 2.0 * qld3_[j] + qld4_[j]);
    qr_[j] += c * (qrd1_[j] + 2.0 * qrd2_[j] + 2.0 * qrd3_[j] + qrd4_[j]);
  }
}

void Solver::step(double dt) {
  const bool warm = time() < warmup_until_ - 1e-15;
  if (grid_.scheme == GridConfig::Scheme::kCentral2Euler || warm)
    euler_step(dt);
  else
    rk4_step(dt);
  for (int j = 0; j < k_; ++j) check_field(j + 1, v_[j]);
}

void Solver::advance_to(double t) {
  if (t < time() - 1e-12) throw std::invalid_argument("advance_to: time must not decrease");
  while (time() + dt_ <= t + 1e-12) {
    step(dt_);
    ++steps_;
  }
  const double rem = t - time();
  if (rem > 1e-12) {
    step(rem);
    base_time_ += rem;
  }
}

std::optional<double> Solver::front_comoving(int type) const {
  const auto& v = values(type);
  // Monotone decreasing profile: find the rightmost node at or above 1/2.
  std::size_t i = n_;
  for (std::size_t j = n_; j-- > 0;) {
    if (v[j] >= 0.5) {
      i = j;
      break;
    }
  }
  if (i == n_) return std::nullopt;  // level not reached yet
  if (i + 1 >= n_) throw StabilityError("front at the right domain edge");
  if (i < 5 || i + 5 >= n_) throw StabilityError("front too close to a domain edge");
  const double frac = (v[i] - 0.5) / (v[i] - v[i + 1]);
  return grid_x(i) + frac * grid_.dx;
}

std::optional<FrontPoint> Solver::front(int type) const {
  const auto fc = front_comoving(type);
  if (!fc) return std::nullopt;
  FrontPoint p;
  p.t = time();
  p.front_comoving = *fc;
  p.front_static = *fc + grid_.frame_speed * time();
  return p;
}

double Solver::value_at(int type, double xi) const {
  const auto& v = values(type);
  const double pos = (xi - grid_.x_lo) / grid_.dx;
  if (pos <= 0.0) return v.front();
  if (pos >= static_cast<double>(n_ - 1)) return v.back();
  const std::size_t i = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(i);
  return v[i] + f * (v[i + 1] - v[i]);
}

double Solver::log_value_at(int type, double xi) const {
  const auto& v = values(type);
  const double pos = (xi - grid_.x_lo) / grid_.dx;
  if (pos <= 0.0) return v.front();
  if (pos >= static_cast<double>(n_ - 1)) return v.back();
  const std::size_t i = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(i);
  if (v[i] > 0.0 && v[i + 1] > 0.0)
    return std::exp((1.0 - f) * std::log(v[i]) + f * std::log(v[i + 1]));
  return v[i] + f * (v[i + 1] - v[i]);
}

TailRatioTable uniform_tail_check(const Solver& solver, int type, double eps, double y,
                                  int n_points) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("uniform_tail_check: eps must be in (0,1)");
  if (n_points < 2) throw std::invalid_argument("uniform_tail_check: need >= 2 points");
  const double t = solver.time();
  if (!(t > 1.0)) throw std::invalid_argument("uniform_tail_check: t too small");
  const double sqt = std::sqrt(t);
  TailRatioTable out;
  out.t = t;
  out.y = y;
  out.eps = eps;

  const double x_lo = -sqt / eps, x_hi = -eps * sqt;
  std::vector<double> log_ratio0(n_points);
  std::vector<double> xs(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / (n_points - 1);
    const double xi = -x + y;  // co-moving coordinate of sqrt(2) t - x + y
    const double v = solver.log_value_at(type, xi);
    const double form = std::pow(t, -1.5) * (-x) *
                        std::exp(-std::numbers::sqrt2 * (y - x)) *
                        std::exp(-x * x / (2.0 * t));
    xs[i] = x;
    log_ratio0[i] = std::log(v) - std::log(form);
  }
  double mean = 0.0;
  for (double l : log_ratio0) mean += l;
  mean /= n_points;
  out.fitted_constant = std::exp(mean);
  for (int i = 0; i < n_points; ++i)
    out.rows.push_back({xs[i], std::exp(log_ratio0[i] - mean)});
  return out;
}

SolveResult run_fronts(Solver& solver, double t_end, double record_dt, double record_from) {
  if (!(record_dt > 0.0)) throw std::invalid_argument("run_fronts: record_dt must be > 0");
  SolveResult out;
  out.fronts.resize(solver.num_types());
  for (double t = record_from; t <= t_end + 1e-9; t += record_dt) {
    solver.advance_to(t);
    for (int j = 1; j <= solver.num_types(); ++j) {
      const auto p = solver.front(j);
      if (p) out.fronts[j - 1].points.push_back(*p);
    }
  }
  solver.advance_to(t_end);
  out.t_end = solver.time();
  return out;
}

}  // namespace bbm::fkpp
