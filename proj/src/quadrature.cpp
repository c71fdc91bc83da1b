#include "bbm/quadrature.hpp"

#include <cmath>

#include "bbm/errors.hpp"

namespace bbm {

namespace {

struct Worst {
  double err = 0.0;
};

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth,
             Worst& worst) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || depth <= 0) {
    if (depth <= 0) worst.err = std::max(worst.err, std::abs(err));
    return left + right + err;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, worst) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, worst);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth) {
  if (a == b) return {0.0, 0.0};
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  Worst worst;
  const double value = adapt(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, worst);
  if (worst.err > abs_tol)
    throw QuadratureError("adaptive quadrature did not converge", worst.err);
  return {value, worst.err};
}

}  // namespace bbm
