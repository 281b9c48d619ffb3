#include "beamk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "beamk/errors.hpp"

namespace beamk {

std::string_view to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::gauss_legendre:
      return "gauss_legendre";
    case QuadratureRule::composite_simpson:
      return "composite_simpson";
  }
  return "unknown";
}

QuadratureRule parse_quadrature_rule(std::string_view name) {
  if (name == "gauss_legendre") return QuadratureRule::gauss_legendre;
  if (name == "composite_simpson") return QuadratureRule::composite_simpson;
  throw UnsupportedRuleError("unsupported quadrature rule '" + std::string(name) +
                             "' (expected gauss_legendre or composite_simpson)");
}

QuadratureGrid gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  if (!(b > a)) throw DomainError("gauss_legendre: need a < b");

  const std::size_t count = static_cast<std::size_t>(n);
  std::vector<double> x(count), w(count);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const int m = (n + 1) / 2;

  for (int i = 0; i < m; ++i) {
    // Tricomi's estimate of the i-th largest root of P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // P_n'(z) from P_n and P_{n-1}.
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    if (2 * i + 1 == n) z = 0.0;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    // Ascending order: the i-th largest root goes to the back.
    x[count - 1 - i] = mid + half * z;
    x[i] = mid - half * z;
    w[i] = w[count - 1 - i] = half * wi;
  }
  return {std::move(x), std::move(w), a, b};
}

QuadratureGrid composite_simpson(int n, double a, double b) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("composite_simpson: n must be odd and >= 3, got " + std::to_string(n));
  }
  if (!(b > a)) throw DomainError("composite_simpson: need a < b");
  const std::size_t count = static_cast<std::size_t>(n);
  const double h = (b - a) / (n - 1);
  const double mid = 0.5 * (a + b);
  std::vector<double> x(count), w(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Place nodes symmetrically about the midpoint.
    const double offset = (static_cast<double>(i) - 0.5 * (n - 1)) * h;
    x[i] = mid + offset;
    w[i] = (i == 0 || i == count - 1) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
  }
  x.front() = a;
  x.back() = b;
  return {std::move(x), std::move(w), a, b};
}

QuadratureGrid make_grid(QuadratureRule rule, int n, double a, double b) {
  switch (rule) {
    case QuadratureRule::gauss_legendre:
      return gauss_legendre(n, a, b);
    case QuadratureRule::composite_simpson:
      return composite_simpson(n, a, b);
  }
  throw UnsupportedRuleError("make_grid: unknown quadrature rule");
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  if (n >= 1) w.front() = 0.5 * h;
  if (n >= 2) w.back() = 0.5 * h;
  if (n == 1) w.front() = 0.0;
  return w;
}

}  // namespace beamk
