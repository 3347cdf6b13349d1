#ifndef VACQ_ERRORS_HPP
#define VACQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vacq {

/// Base class for all solver-level failures. Parameter validation uses
/// std::invalid_argument directly.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fixed-point iteration for the rate matrix hit the iteration cap.
class NonConvergenceError : public SolverError {
public:
  NonConvergenceError(int iterations, double last_residual, const std::string& what)
      : SolverError(what), iterations(iterations), last_residual(last_residual) {}
  int iterations;
  double last_residual;
};

/// A matrix that must be invertible for any valid model turned out singular.
class SingularMatrixError : public SolverError {
public:
  using SolverError::SolverError;
};

/// The boundary balance system does not have a one-dimensional null space
/// (or the dropped balance equation failed its residual check).
class RankDeficiencyError : public SolverError {
public:
  using SolverError::SolverError;
};

/// A stationary vector came out with a component below -1e-10.
class NegativeMassError : public SolverError {
public:
  using SolverError::SolverError;
};

/// The operation requires a stable model (or a stable M/M/1 load).
class UnstableError : public SolverError {
public:
  using SolverError::SolverError;
};

/// The linear solver reported failure on the truncated system.
class IllConditionedError : public SolverError {
public:
  using SolverError::SolverError;
};

}  // namespace vacq

#endif
