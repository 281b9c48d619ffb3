#pragma once

#include <numbers>

namespace beamk {

/// Physical parameters of a beam of length 2l on a Winkler foundation.
///
/// E, I, k and l are validated on construction; alpha = (k/(EI))^{1/4} and
/// the dimensionless length L = 2*sqrt(2)*l*alpha are derived once and cached.
class BeamConfig {
 public:
  /// Throws DomainError unless all four parameters are finite and positive.
  BeamConfig(double E, double I, double k, double l);

  /// E = I = k = l = 1, so alpha = 1 and L = 2*sqrt(2).
  static BeamConfig unit() { return {1.0, 1.0, 1.0, 1.0}; }

  double E() const noexcept { return E_; }
  double I() const noexcept { return I_; }
  double k() const noexcept { return k_; }
  double l() const noexcept { return l_; }
  double flexural_rigidity() const noexcept { return E_ * I_; }
  double alpha() const noexcept { return alpha_; }
  double L() const noexcept { return L_; }

  BeamConfig with_half_length(double l) const { return {E_, I_, k_, l}; }

 private:
  double E_, I_, k_, l_;
  double alpha_, L_;
};

/// Eigenvalue candidate lambda with its characteristic coordinate
/// kappa = (1 - 1/(lambda k))^{1/4}. Only defined for lambda outside [0, 1/k].
class SpectralPoint {
 public:
  static SpectralPoint from_lambda(double lambda, double k);
  /// kappa > 0, kappa != 1.
  static SpectralPoint from_kappa(double kappa, double k);

  double lambda() const noexcept { return lambda_; }
  double kappa() const noexcept { return kappa_; }
  double k() const noexcept { return k_; }

 private:
  SpectralPoint(double lambda, double kappa, double k) : lambda_(lambda), kappa_(kappa), k_(k) {}
  double lambda_, kappa_, k_;
};

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
/// Branch points of the phase function: sqrt(2) - 1 and sqrt(2) + 1.
inline constexpr double kappa_lower_branch = std::numbers::sqrt2 - 1.0;
inline constexpr double kappa_upper_branch = std::numbers::sqrt2 + 1.0;
/// f(-1), the minimum of f on [-1, 1].
inline constexpr double f_min = 3.0 - 2.0 * std::numbers::sqrt2;
}  // namespace constants

}  // namespace beamk
