#ifndef BBM_ERRORS_HPP
#define BBM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bbm {

/// Live particle-event count exceeded the configured cap; the requested
/// horizon/barrier combination is infeasible at desk scale.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A rejection sampler exhausted its attempt budget.
class SamplingError : public std::runtime_error {
 public:
  explicit SamplingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Queried a snapshot for a particle type with no living representative.
class EmptyTypeError : public std::runtime_error {
 public:
  explicit EmptyTypeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double achieved)
      : std::runtime_error(msg + " (achieved tolerance " + std::to_string(achieved) + ")"),
        achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

/// PDE step violated the maximum principle or a CFL-type constraint.
class StabilityError : public std::runtime_error {
 public:
  explicit StabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative solve (ODE shooting, Newton) failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Degenerate input to a fitting routine (e.g. constant sample).
class DegenerateSampleError : public std::invalid_argument {
 public:
  explicit DegenerateSampleError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed input file.
class MalformedInputError : public std::runtime_error {
 public:
  explicit MalformedInputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bbm

#endif
