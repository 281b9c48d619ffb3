#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "beamk/config.hpp"
#include "beamk/quadrature.hpp"

namespace beamk::spectral {

/// Green's function of the infinite beam,
///   K(y) = alpha/(2k) exp(-alpha y/sqrt2) sin(alpha y/sqrt2 + pi/4),  y >= 0.
double kernel_K(double y, const BeamConfig& config);

/// Symmetrized Nystrom matrix A_ij = sqrt(w_i) K(|x_i - x_j|) sqrt(w_j) on [-l, l].
/// Its eigenvalues approximate those of the integral operator; eigenvectors are
/// the operator's eigenfunctions sampled at the nodes and scaled by sqrt(w).
struct KernelMatrix {
  QuadratureGrid grid;
  Eigen::MatrixXd entries;
  BeamConfig config;
  QuadratureRule rule;

  std::size_t size() const noexcept { return grid.size(); }
  double symmetry_defect() const;
};

/// n >= 4. Gauss-Legendre uses one panel: the kernel is C^2 across x = xi
/// (K'(0) = 0), so the rule still converges fast. Simpson needs odd n.
KernelMatrix discretize(const BeamConfig& config, int n,
                        QuadratureRule rule = QuadratureRule::gauss_legendre);

enum class Parity { even, odd, unclassified };
std::string_view to_string(Parity p);

/// |score| > 0.99 classifies; score = <v, reverse(v)> / <v, v>.
inline constexpr double parity_threshold = 0.99;

struct Spectrum {
  /// Descending.
  std::vector<double> eigenvalues;
  /// Column i belongs to eigenvalues[i].
  Eigen::MatrixXd eigenvectors;
  /// ||A v_i - lambda_i v_i||_2 per pair.
  std::vector<double> residuals;
  double residual_bound = 0.0;
  std::vector<double> parity_scores;
  std::vector<Parity> parity;
  /// |lambda_i(n) - lambda_i(n/2)|; empty until estimate_discretization_error runs.
  /// Indices past the coarse spectrum are +inf.
  std::vector<double> discretization_error;

  std::size_t n() const noexcept { return eigenvalues.size(); }

  /// Length of the leading run of eigenvalues above ten times their error
  /// estimate (discretization error if known, residual_bound otherwise).
  std::size_t reliable_count() const;
};

/// Full symmetric eigendecomposition (Householder tridiagonalization + implicit QR).
/// Parity is measured by reversing each eigenvector, which is meaningful for
/// grids symmetric about the midpoint. Throws EigenSolverError when the solver
/// fails or a residual exceeds tol * max(1, |lambda_1|).
Spectrum eigen_spectrum(const Eigen::MatrixXd& a, double tol = 1e-12);
Spectrum eigen_spectrum(const KernelMatrix& m, double tol = 1e-12);

/// Fills s.discretization_error by comparing against a spectrum on a coarser grid.
void estimate_discretization_error(Spectrum& s, const Spectrum& coarse);

/// Spectrum at n nodes with the error estimated against n/2 nodes.
Spectrum analyze(const BeamConfig& config, int n,
                 QuadratureRule rule = QuadratureRule::gauss_legendre, double tol = 1e-12);

struct Violation {
  std::size_t index;
  double eigenvalue;
};

struct Confinement {
  bool confined = false;
  double lower_limit = 0.0;  ///< -tol
  double upper_limit = 0.0;  ///< 1/k - margin
  std::vector<Violation> violations;
};

/// Every eigenvalue must satisfy -tol < lambda < 1/k - margin, where margin is
/// the larger of margin_floor/k and the largest discretization error estimate.
Confinement verify_confinement(const Spectrum& s, const BeamConfig& config, double tol = 1e-10,
                               double margin_floor = 1e-3);

/// psi_L(kappa) - q(kappa) at kappa = (1 - 1/(lambda k))^{1/4}, L = config.L().
/// Zero would mean lambda is an eigenvalue. Returns +inf once psi overflows.
/// Throws DomainError for lambda in [0, 1/k].
double characteristic_residual(double lambda, const BeamConfig& config);

struct DecayFit {
  double slope = 0.0;
  double r2 = 0.0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
};

/// Default window (1-based indices) for the n^-4 tail. Lower indices are still
/// pre-asymptotic: the local slope is about -5.3 at n = 4.
inline constexpr std::size_t decay_window_lo = 20;
inline constexpr std::size_t decay_window_hi = 60;

/// Least-squares slope of log lambda_n against log n for n in [n_lo, n_hi].
/// Throws DomainError unless 1 <= n_lo < n_hi, and InsufficientEigenvaluesError
/// if the window runs past the available (or reliable) eigenvalues.
DecayFit decay_fit(std::span<const double> eigenvalues, std::size_t n_lo, std::size_t n_hi);
DecayFit decay_fit(const Spectrum& s, std::size_t n_lo = decay_window_lo,
                   std::size_t n_hi = decay_window_hi);

/// Smallest gap between consecutive eigenvalues among the first `count`.
double min_gap(const Spectrum& s, std::size_t count);

/// True if the first `count` eigenvectors are all classified and alternate in parity.
bool parity_alternates(const Spectrum& s, std::size_t count);

}  // namespace beamk::spectral
