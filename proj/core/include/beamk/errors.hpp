#pragma once

#include <stdexcept>
#include <string>

namespace beamk {

/// Argument outside the domain of a function (negative kappa, t outside [-1, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Derivative requested at a point where the function has a kink or a pole.
class NonDifferentiableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method ran out of budget. For inputs inside the documented
/// domain this signals an internal bug, not a user error.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few eigenvalues survive the reliability screen for the requested fit window.
class InsufficientEigenvaluesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picard map for the nonlinear foundation law is not a contraction.
class NonContractionError : public std::runtime_error {
 public:
  NonContractionError(const std::string& what, double rho)
      : std::runtime_error(what), rho_(rho) {}
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

class UnsupportedRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Samples do not live on the grid the operator was discretized on.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace beamk
