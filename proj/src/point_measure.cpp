#include "bbm/point_measure.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "bbm/errors.hpp"
#include "bbm/io.hpp"

namespace bbm {

double PointMeasure::max_atom() const {
  if (atoms.empty()) throw EmptyTypeError("max_atom: empty point measure");
  return *std::max_element(atoms.begin(), atoms.end());
}

double laplace_pairing(const PointMeasure& e, const TestFunction& phi) {
  double sum = 0.0;
  for (double a : e.atoms) sum += phi(a);
  return sum;
}

void write_point_measure_csv(std::ostream& os, const PointMeasure& e) {
  os << "atom\n";
  for (double a : e.atoms) os << io::fmt(a) << "\n";
}

PointMeasure read_point_measure_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "atom")
    throw MalformedInputError("point measure CSV: missing 'atom' header");
  PointMeasure e;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    e.atoms.push_back(std::stod(line));
  }
  return e;
}

}  // namespace bbm
