#ifndef BBM_TEST_FUNCTION_HPP
#define BBM_TEST_FUNCTION_HPP

#include <utility>
#include <vector>

#include "bbm/rng.hpp"

namespace bbm {

/// Non-negative bounded piecewise-linear function with support bounded on
/// the left: zero on (-inf, -A), linear between knots, constant after the
/// last knot. If -A lies strictly left of the first knot, an implicit knot
/// (-A, 0) keeps the function continuous; if -A coincides with the first
/// knot the function may jump there (the support edge).
class TestFunction {
 public:
  /// knots: sorted (x, value) pairs, values >= 0. left_support_bound is the
  /// spec's A: phi(x) = 0 for x < -A. Requires -A <= first knot x.
  TestFunction(std::vector<std::pair<double, double>> knots, double left_support_bound);

  /// Constant value on [0, inf), zero to the left of 0.
  static TestFunction plateau(double value);

  double operator()(double x) const;

  double left_support_bound() const { return a_; }
  double support_start() const { return -a_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  double last_knot_x() const { return knots_.back().first; }
  double tail_value() const { return knots_.back().second; }

  /// Random instance for property tests: support start in [-3, -1],
  /// 2-6 knots, values in [0, 2].
  static TestFunction random(RngStream& rng);

 private:
  std::vector<std::pair<double, double>> knots_;
  double a_;
};

}  // namespace bbm

#endif
