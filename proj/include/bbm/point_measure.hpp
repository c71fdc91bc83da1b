#ifndef BBM_POINT_MEASURE_HPP
#define BBM_POINT_MEASURE_HPP

#include <iosfwd>
#include <vector>

#include "bbm/test_function.hpp"

namespace bbm {

/// Finite multiset of real atoms (an extremal process sample, a PPP draw).
struct PointMeasure {
  std::vector<double> atoms;

  bool empty() const { return atoms.empty(); }
  std::size_t size() const { return atoms.size(); }

  /// Largest atom; throws EmptyTypeError on an empty measure.
  double max_atom() const;
};

/// <E, phi> = sum of phi over the atoms. Non-negative for phi in the test class.
double laplace_pairing(const PointMeasure& e, const TestFunction& phi);

/// CSV with header "atom", one atom per row, 9 significant digits.
void write_point_measure_csv(std::ostream& os, const PointMeasure& e);
PointMeasure read_point_measure_csv(std::istream& is);

}  // namespace bbm

#endif
