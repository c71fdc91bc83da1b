#include "bbm/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbm {

TestFunction::TestFunction(std::vector<std::pair<double, double>> knots,
                           double left_support_bound)
    : knots_(std::move(knots)), a_(left_support_bound) {
  if (knots_.empty()) throw std::invalid_argument("TestFunction: no knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].second >= 0.0) || !std::isfinite(knots_[i].second))
      throw std::invalid_argument("TestFunction: values must be finite and >= 0");
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
      throw std::invalid_argument("TestFunction: knots must be strictly increasing");
  }
  if (-a_ > knots_.front().first)
    throw std::invalid_argument("TestFunction: support must start at or before first knot");
  if (-a_ < knots_.front().first) {
    // Implicit zero knot at the support edge.
    knots_.insert(knots_.begin(), {-a_, 0.0});
  }
}

TestFunction TestFunction::plateau(double value) {
  return TestFunction({{0.0, value}}, 0.0);
}

double TestFunction::operator()(double x) const {
  if (x < -a_) return 0.0;
  if (x >= knots_.back().first) return knots_.back().second;
  // First knot with knot.x > x; the segment [it-1, it] contains x.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  if (it == knots_.begin()) return knots_.front().second;
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *(it - 1);
  const double w = (x - x0) / (x1 - x0);
  return v0 + w * (v1 - v0);
}

TestFunction TestFunction::random(RngStream& rng) {
  const double start = -3.0 + 2.0 * rng.uniform();
  const int n = 2 + static_cast<int>(rng.next_u64() % 5);
  std::vector<std::pair<double, double>> knots;
  double x = start;
  for (int i = 0; i < n; ++i) {
    x += 0.2 + 1.5 * rng.uniform();
    knots.push_back({x, 2.0 * rng.uniform()});
  }
  return TestFunction(std::move(knots), -start);
}

}  // namespace bbm
