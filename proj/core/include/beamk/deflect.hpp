#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "beamk/config.hpp"
#include "beamk/spectral.hpp"

namespace beamk::deflect {

/// Load w(x) (force per length) sampled on a uniform grid; zero outside the
/// sampled support.
class LoadProfile {
 public:
  /// Samples w[i] at x0 + i*h. Throws DomainError for h <= 0, fewer than two
  /// samples or non-finite values.
  LoadProfile(double x0, double h, std::vector<double> w);

  /// n samples of `w` on [a, b].
  static LoadProfile sample(const std::function<double(double)>& w, double a, double b, std::size_t n);
  static LoadProfile zero(double a, double b, std::size_t n);

  /// Linear interpolation inside the support, 0 outside.
  double at(double x) const;

  double x_min() const noexcept { return x0_; }
  double x_max() const noexcept { return x0_ + h_ * static_cast<double>(w_.size() - 1); }
  double x(std::size_t i) const noexcept { return x0_ + h_ * static_cast<double>(i); }
  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return w_.size(); }
  const std::vector<double>& values() const noexcept { return w_; }
  double max_abs() const;

 private:
  double x0_, h_;
  std::vector<double> w_;
};

struct IterationRecord {
  int m;
  double diff_norm;  ///< ||u_m - u_{m-1}||_inf
  double ratio;      ///< diff_norm / previous diff_norm (NaN for m = 1)
};

struct DeflectionProfile {
  std::vector<double> x;
  std::vector<double> u;
  std::string solver;
  int iterations = 0;
  /// Normalized ODE residual when computed, NaN otherwise.
  double residual = std::numeric_limits<double>::quiet_NaN();
  /// Fixed-point runs only: rho = Lambda' * lambda_1 and the last measured ratio.
  double predicted_ratio = std::numeric_limits<double>::quiet_NaN();
  double observed_ratio = std::numeric_limits<double>::quiet_NaN();
  std::vector<IterationRecord> history;
  std::vector<std::string> warnings;
};

/// phi(u, x) in EI u'''' + phi(u, x) = w. `lipschitz(U)` bounds the Lipschitz
/// constant of u -> k u - phi(u, x) over |u| <= U, which is what the Picard
/// map's contraction factor depends on.
struct FoundationLaw {
  std::function<double(double u, double x)> phi;
  std::function<double(double U)> lipschitz;

  /// phi = k u.
  static FoundationLaw linear(double k);
  /// phi = k u + eps u^3, Lipschitz bound 3 |eps| U^2.
  static FoundationLaw cubic(double k, double eps);
  /// Arbitrary phi with a fixed Lipschitz bound.
  static FoundationLaw with_bound(std::function<double(double, double)> phi, double lipschitz);
};

/// Nystrom approximation of the integral operator applied to samples at the
/// matrix nodes: (K u)_i = sum_j K(|x_i - x_j|) w_j u_j.
/// Throws GridMismatchError if u has the wrong length.
std::vector<double> apply_operator(const spectral::KernelMatrix& m, std::span<const double> u);
/// Same, but also checks that profile.x are the matrix nodes.
std::vector<double> apply_operator(const spectral::KernelMatrix& m, const DeflectionProfile& profile);

/// n equispaced points on [a, b].
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// The load's support widened by 10/alpha on both sides, at the load's spacing.
std::vector<double> default_eval_grid(const LoadProfile& w, const BeamConfig& config);

/// Infinite beam: u(x) = int K(|x - xi|) w(xi) dxi by the trapezoid rule over
/// the load samples. The trapezoid rule keeps the error smooth in x (O(h^2)),
/// so finite differences of u stay accurate. Adds a warning when the grid does
/// not reach 10/alpha past the support or u has not decayed at the ends.
DeflectionProfile solve_infinite(const LoadProfile& w, const BeamConfig& config, std::span<const double> eval_grid);

struct FixedPointOptions {
  int n = 400;
  QuadratureRule rule = QuadratureRule::gauss_legendre;
};

/// Picard iteration u_{m+1} = K[w - phi(u_m) + k u_m] from u_0 = K[w] on the
/// finite beam, evaluated at the quadrature nodes. The contraction factor
/// rho = Lambda'(||u_0||_inf) * lambda_1 is checked first.
/// Throws NonContractionError if rho >= 1 and ConvergenceError after max_iter.
DeflectionProfile solve_nonlinear_fixed_point(const LoadProfile& w, const FoundationLaw& phi,
                                              const BeamConfig& config, double tol, int max_iter,
                                              const FixedPointOptions& options = {});

/// max over interior points of |EI D4 u + phi(u, x) - w(x)| / max|w| with the
/// 5-point central fourth difference (unnormalized when w vanishes on the grid).
/// Needs a uniform grid with at least 5 interior points; throws DomainError otherwise.
double residual_ode(const DeflectionProfile& u, const LoadProfile& w, const BeamConfig& config);
double residual_ode(const DeflectionProfile& u, const LoadProfile& w, const FoundationLaw& phi,
                    const BeamConfig& config);

}  // namespace beamk::deflect
