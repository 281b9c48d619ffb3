#include "beamk/charfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "beamk/config.hpp"
#include "beamk/errors.hpp"
#include "detail/bracketed_newton.hpp"

namespace beamk::charfun {

namespace {

using constants::kappa_lower_branch;
using constants::kappa_upper_branch;
using constants::pi;
using constants::sqrt2;
using constants::two_pi;

void require_kappa(double kappa, const char* fn) {
  if (!(kappa >= 0.0) || std::isinf(kappa)) {
    throw DomainError(std::string(fn) + ": kappa must be finite and >= 0, got " +
                      std::to_string(kappa));
  }
}

void require_L(double L, const char* fn) {
  if (!(L > 0.0) || std::isinf(L)) {
    throw DomainError(std::string(fn) + ": L must be finite and > 0, got " + std::to_string(L));
  }
}

void require_last_branch_t(double t, const char* fn) {
  if (!(t >= 1.5 * pi && t < two_pi)) {
    throw DomainError(std::string(fn) + ": t must lie in [3pi/2, 2pi), got " +
                      std::to_string(t));
  }
}

}  // namespace

double q(double kappa) {
  require_kappa(kappa, "q");
  const double r = (kappa - 1.0) / (kappa + 1.0);
  return r * r;
}

double q_prime(double kappa) {
  require_kappa(kappa, "q_prime");
  const double p = kappa + 1.0;
  return 4.0 * (kappa - 1.0) / (p * p * p);
}

double f(double t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    throw DomainError("f: t must lie in [-1, 1], got " + std::to_string(t));
  }
  const double one_minus_t = 1.0 - t;
  return 1.0 / ((1.0 + one_minus_t) + std::sqrt(one_minus_t * (3.0 - t)));
}

double f_prime(double t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    throw DomainError("f_prime: t must lie in [-1, 1], got " + std::to_string(t));
  }
  if (t == 1.0) throw NonDifferentiableError("f_prime: f is not differentiable at t = 1");
  return f(t) / std::sqrt((1.0 - t) * (3.0 - t));
}

double phase_arctan(double kappa) {
  require_kappa(kappa, "phase_arctan");
  if (kappa == 0.0) return 0.0;
  // 4k(k^2-1)/(k^4-6k^2+1) = 4x/(x^2-4) = 4/(x - 4/x) with x = k - 1/k.
  const double x = (kappa - 1.0) * (kappa + 1.0) / kappa;
  if (x == 0.0) return 0.0;
  return std::atan(4.0 / (x - 4.0 / x));
}

BranchedAngle ghat(double kappa) {
  require_kappa(kappa, "ghat");
  if (kappa == kappa_lower_branch) return {-0.5 * pi, 1};
  if (kappa == kappa_upper_branch) return {-1.5 * pi, 2};
  const double theta = phase_arctan(kappa);
  if (kappa < kappa_lower_branch) return {theta, 0};
  if (kappa < kappa_upper_branch) return {-pi + theta, 1};
  return {-two_pi + theta, 2};
}

double ghat_prime(double kappa) {
  require_kappa(kappa, "ghat_prime");
  return -4.0 / (kappa * kappa + 1.0);
}

double g(double kappa, double L) {
  require_kappa(kappa, "g");
  require_L(L, "g");
  return L * kappa - ghat(kappa).value;
}

double g_prime(double kappa, double L) {
  require_kappa(kappa, "g_prime");
  require_L(L, "g_prime");
  return L + 4.0 / (kappa * kappa + 1.0);
}

double g_inverse(double t, double L, double tol) {
  if (!(t >= 0.0) || std::isinf(t)) {
    throw DomainError("g_inverse: t must be finite and >= 0, got " + std::to_string(t));
  }
  require_L(L, "g_inverse");
  if (!(tol > 0.0)) throw DomainError("g_inverse: tol must be > 0");
  if (t == 0.0) return 0.0;

  // L k <= g_L(k) <= L k + 2 pi.
  const double lo = std::max(0.0, (t - two_pi) / L);
  const double hi = t / L;
  // g_L(k) ~ (L + 4) k near 0 and ~ L k + 2 pi for large k.
  const double guess = t < two_pi ? t / (L + 4.0) : lo;
  const auto result = detail::increasing_root([&](double k) { return g(k, L) - t; },
                                              [&](double k) { return g_prime(k, L); }, lo, hi,
                                              guess, tol);
  return result.x;
}

double ghat_inverse(double t, double tol) {
  if (!(t >= 0.0 && t < two_pi)) {
    throw DomainError("ghat_inverse: t must lie in [0, 2pi), got " + std::to_string(t));
  }
  if (t == 0.0) return 0.0;
  // -ghat is increasing; ghat(k) > -2pi + 4 atan(1/k) puts the root below ~4/(2pi - t) + 1.
  double hi = 1.0;
  while (-ghat(hi).value < t) {
    hi *= 2.0;
    if (std::isinf(hi)) throw ConvergenceError("ghat_inverse: bracket expansion overflowed");
  }
  const auto result = detail::increasing_root([&](double k) { return -ghat(k).value - t; },
                                              [](double k) { return 4.0 / (k * k + 1.0); }, 0.0,
                                              hi, 0.5 * hi, tol);
  return result.x;
}

double f_of_angle(double x) {
  const double s = std::sin(0.5 * x);
  const double one_minus_c = 2.0 * s * s;
  const double three_minus_c = 2.0 + one_minus_c;
  return 1.0 / ((1.0 + one_minus_c) + std::sqrt(one_minus_c * three_minus_c));
}

double sine_ratio(double x) {
  const double s = std::sin(0.5 * x);
  const double c = std::cos(0.5 * x);
  const double three_minus_cos = 2.0 + 2.0 * s * s;
  const double sign = s < 0.0 ? -1.0 : 1.0;
  return sqrt2 * sign * c / std::sqrt(three_minus_cos);
}

PsiValue psi(double kappa, double L) {
  require_kappa(kappa, "psi");
  require_L(L, "psi");
  const double exponent = L * kappa;
  const double fv = f_of_angle(g(kappa, L));
  const double log_value = exponent + std::log(fv);
  if (exponent > log_saturation) {
    return {std::numeric_limits<double>::infinity(), log_value, true};
  }
  return {std::exp(exponent) * fv, log_value, false};
}

double psi_prime(double kappa, double L) {
  require_kappa(kappa, "psi_prime");
  require_L(L, "psi_prime");
  const double phase = g(kappa, L);
  if (std::abs(std::remainder(phase, two_pi)) < kink_tolerance) {
    throw NonDifferentiableError("psi_prime: g_L(kappa) is a multiple of 2pi at kappa = " +
                                 std::to_string(kappa));
  }
  return psi(kappa, L).value * (L - sine_ratio(phase) * g_prime(kappa, L));
}

double ghat_inverse_closed(double t) {
  require_last_branch_t(t, "ghat_inverse_closed");
  const double s = std::sin(0.5 * t);
  const double c = std::cos(0.5 * t);
  const double one_plus_cos = 2.0 * c * c;
  const double one_minus_cos = 2.0 * s * s;
  return (std::sqrt(one_plus_cos) + sqrt2) / std::sqrt(one_minus_cos);
}

double q_of_ghat_inverse(double t) {
  require_last_branch_t(t, "q_of_ghat_inverse");
  const double s = std::sin(0.5 * t);
  const double c = std::cos(0.5 * t);
  const double one_plus_cos = 2.0 * c * c;
  const double one_minus_cos = 2.0 * s * s;
  return (2.0 + one_minus_cos - 2.0 * sqrt2 * std::sqrt(one_minus_cos)) / one_plus_cos;
}

}  // namespace beamk::charfun
