#ifndef BBM_FKPP_HPP
#define BBM_FKPP_HPP

#include <functional>
#include <optional>
#include <vector>

namespace bbm::fkpp {

/// Grid for the co-moving frame solve. The PDE is
///   dv/dt = 1/2 v_xx + frame_speed v_x + v(1-v) [+ coupling],
/// i.e. the front-tracking form of dv/dt = 1/2 v_xx + v(1-v) expressed in
/// xi = x - frame_speed * t.
struct GridConfig {
  double dx = 0.05;
  double dt_factor = 0.4;  // dt = dt_factor * dx^2, <= 0.5
  double x_lo = -60.0;
  double x_hi = 60.0;
  double frame_speed = 1.4142135623730951;

  /// kCentral4Rk4: fourth-order central stencils with classic RK4 and a
  /// short monotone second-order warmup for rough initial data. Its pulled
  /// front travels at the continuum speed to ~1e-6, which the log-correction
  /// regressions need. kCentral2Euler: plain FTCS (kept for comparison; its
  /// front speed is low by about 1.1e-3 at the default grid).
  enum class Scheme { kCentral4Rk4, kCentral2Euler };
  Scheme scheme = Scheme::kCentral4Rk4;

  void validate() const;
};

struct FrontPoint {
  double t = 0.0;
  double front_static = 0.0;
  double front_comoving = 0.0;
};

struct FrontTrace {
  std::vector<FrontPoint> points;
};

/// Coupled cascade solver for v_j(t, x) = P(max type-k descendant of a
/// type-j ancestor exceeds x), j = 1..k:
///   top type:   dv_k/dt = 1/2 v_k'' + v_k (1 - v_k)
///   j < k:      dv_j/dt = 1/2 v_j'' + v_j (1 - v_j) + alpha (1 - v_j) v_{j+1}
/// The top type starts from the supplied profile (Heaviside for the front
/// study); lower types start from zero and are pumped by the coupling term.
/// Left boundary values follow the spatially uniform ODE system, right
/// boundary is zero.
class Solver {
 public:
  /// front_conditions enforces the admissibility of front studies (mass on
  /// the left, support bounded on the right); equilibrium profiles may turn
  /// it off.
  Solver(int num_types, double alpha, const GridConfig& grid,
         const std::function<double(double)>& top_initial, bool front_conditions = true);

  static Solver heaviside(int num_types, double alpha, const GridConfig& grid);

  void advance_to(double t);

  double time() const { return base_time_ + static_cast<double>(steps_) * dt_; }
  double dt() const { return dt_; }
  int num_types() const { return k_; }
  const GridConfig& grid() const { return grid_; }

  /// Profile of one type (1-based), on grid_x(0..size-1).
  const std::vector<double>& values(int type) const;
  std::size_t grid_size() const { return n_; }
  double grid_x(std::size_t i) const { return grid_.x_lo + static_cast<double>(i) * grid_.dx; }

  /// Spatially uniform boundary values; both edges follow the reaction ODE
  /// of a flat profile.
  double left_boundary(int type) const;
  double right_boundary(int type) const;

  /// Co-moving position where the profile crosses 1/2 (linear interpolation);
  /// empty while the type's mass is still below the level. Throws
  /// StabilityError if the crossing sits within 5 nodes of a domain edge.
  std::optional<double> front_comoving(int type) const;
  std::optional<FrontPoint> front(int type) const;

  double value_at(int type, double xi) const;      // linear interpolation
  double log_value_at(int type, double xi) const;  // log-linear; for the deep tail

 private:
  void check_field(int type, std::vector<double>& v);
  void euler_step(double dt);
  void rk4_step(double dt);
  void step(double dt);

  GridConfig grid_;
  int k_;
  double alpha_;
  std::size_t n_;
  double dt_;
  double base_time_ = 0.0;
  long long steps_ = 0;
  double warmup_until_ = 0.0;
  std::vector<std::vector<double>> v_;  // v_[j]: type j+1
  std::vector<double> ql_, qr_;         // boundary values (left, right)
  // scratch for RK4
  std::vector<std::vector<double>> tmp_, d1_, d2_, d3_, d4_;
  std::vector<double> qltmp_, qld1_, qld2_, qld3_, qld4_;
  std::vector<double> qrtmp_, qrd1_, qrd2_, qrd3_, qrd4_;
};

/// Convenience driver: advances to t_end recording the half-level front of
/// every type each record_dt.
struct SolveResult {
  std::vector<FrontTrace> fronts;  // index j = type j+1
  double t_end = 0.0;
};
SolveResult run_fronts(Solver& solver, double t_end, double record_dt,
                       double record_from = 0.0);

/// Ratio table of the solved tail against the asymptotic form
///   C t^{-3/2} (-x) e^{-sqrt(2)(y - x)} e^{-x^2 / 2t}
/// on n_points values of x spanning [-sqrt(t)/eps, -eps sqrt(t)], with the
/// single constant C fitted in log space over the grid. The solver must
/// already sit at the probe time.
struct TailRatioTable {
  double t = 0.0;
  double y = 0.0;
  double eps = 0.0;
  double fitted_constant = 0.0;
  std::vector<std::pair<double, double>> rows;  // (x, ratio)
};
TailRatioTable uniform_tail_check(const Solver& solver, int type, double eps, double y,
                                  int n_points);

}  // namespace bbm::fkpp

#endif
