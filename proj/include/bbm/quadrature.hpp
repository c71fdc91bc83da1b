#ifndef BBM_QUADRATURE_HPP
#define BBM_QUADRATURE_HPP

#include <functional>

namespace bbm {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Simpson on [a, b]. Throws QuadratureError (with the achieved
/// tolerance) if the recursion budget is exhausted before converging.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth = 40);

}  // namespace bbm

#endif
