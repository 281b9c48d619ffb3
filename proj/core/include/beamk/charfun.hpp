#pragma once

/// Closed-form characteristic functions of the finite-beam operator.
///
/// kappa is the characteristic coordinate, L = 2*sqrt(2)*l*alpha the
/// dimensionless beam length. Eigenvalues outside (0, 1/k) would correspond to
/// roots of psi(kappa, L) = q(kappa); the scanner module certifies there are none.
///
/// Every function is pure and thread-safe. Precondition violations throw
/// DomainError; derivatives at kinks throw NonDifferentiableError.

namespace beamk::charfun {

/// ((kappa - 1) / (kappa + 1))^2, kappa >= 0.
double q(double kappa);
/// 4 (kappa - 1) / (kappa + 1)^3.
double q_prime(double kappa);

/// f(t) = (2 - t) - sqrt((2 - t)^2 - 1) for t in [-1, 1]. Evaluated in the
/// conjugate form 1 / ((2 - t) + sqrt((1 - t)(3 - t))), which has no cancellation.
double f(double t);
/// f(t) / sqrt((2 - t)^2 - 1); singular at t = 1.
double f_prime(double t);

/// Phase function value together with the arctan piece it came from.
struct BranchedAngle {
  double value;  ///< in (-2 pi, 0]
  int branch;    ///< 0: kappa < sqrt2-1, 1: sqrt2-1 <= kappa < sqrt2+1, 2: kappa >= sqrt2+1
};

/// Principal arctan of 4 kappa (kappa^2 - 1) / (kappa^4 - 6 kappa^2 + 1).
/// Evaluated through x = kappa - 1/kappa as atan(4 / (x - 4/x)) so that it
/// neither overflows for large kappa nor loses accuracy near kappa = 1.
double phase_arctan(double kappa);

/// Piecewise arctan phase, continuous and strictly decreasing from 0 to -2 pi.
/// Branch selection is by kappa interval; the branch points return the exact
/// constants -pi/2 and -3pi/2.
BranchedAngle ghat(double kappa);
/// -4 / (kappa^2 + 1).
double ghat_prime(double kappa);

/// g_L(kappa) = L kappa - ghat(kappa); strictly increasing from g_L(0) = 0.
double g(double kappa, double L);
/// L + 4 / (kappa^2 + 1).
double g_prime(double kappa, double L);

/// Inverse of g_L: returns kappa with |g_L(kappa) - t| <= tol, or the double
/// closest to the root when tol is below what floating point can resolve.
/// Bracketed by [max(0, (t - 2pi)/L), t/L]; Newton steps with bisection fallback.
double g_inverse(double t, double L, double tol = 1e-12);

/// Inverse of the phase function: kappa with ghat(kappa) = -t for t in [0, 2 pi).
/// Uses monotone root finding; see ghat_inverse_closed for the closed form
/// available on the last branch.
double ghat_inverse(double t, double tol = 1e-14);

/// Result of psi_L(kappa) = exp(L kappa) f(cos g_L(kappa)).
/// When L kappa exceeds log_saturation, value is +inf and only log_value is
/// meaningful; psi is then larger than any finite threshold of interest.
struct PsiValue {
  double value;
  double log_value;
  bool saturated;
};

inline constexpr double log_saturation = 700.0;

PsiValue psi(double kappa, double L);

/// psi_L'(kappa) = psi_L(kappa) { L - sin g / sqrt((2 - cos g)^2 - 1) * g_L'(kappa) }.
/// Throws NonDifferentiableError where |g_L(kappa) mod 2 pi| < kink_tolerance.
double psi_prime(double kappa, double L);

inline constexpr double kink_tolerance = 1e-9;

/// sin x / sqrt((2 - cos x)^2 - 1), written in half angles as
/// sqrt(2) sgn(sin(x/2)) cos(x/2) / sqrt(3 - cos x). Bounded by 1 in magnitude;
/// undefined at multiples of 2 pi (returns the right limit +1 there).
double sine_ratio(double x);

/// f(cos x) computed from the angle with 1 - cos x = 2 sin^2(x/2).
double f_of_angle(double x);

/// Closed-form inverse (sqrt(1 + cos t) + sqrt(2)) / sqrt(1 - cos t) of the
/// phase function on its last branch: ghat(result) = -t. Accepts
/// t in [3pi/2, 2pi); the left end returns the limit 1 + sqrt(2).
double ghat_inverse_closed(double t);

/// (3 - cos t - 2 sqrt(2) sqrt(1 - cos t)) / (1 + cos t), equal to
/// q(ghat_inverse_closed(t)). Same domain as ghat_inverse_closed.
double q_of_ghat_inverse(double t);

}  // namespace beamk::charfun
