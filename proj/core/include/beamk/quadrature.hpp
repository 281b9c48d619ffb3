#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace beamk {

enum class QuadratureRule { gauss_legendre, composite_simpson };

std::string_view to_string(QuadratureRule rule);
/// Accepts "gauss_legendre" and "composite_simpson"; throws UnsupportedRuleError otherwise.
QuadratureRule parse_quadrature_rule(std::string_view name);

/// Nodes (strictly increasing) and positive weights of a rule on [a, b].
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule. Nodes are symmetric about (a + b)/2 bit for bit.
QuadratureGrid gauss_legendre(int n, double a, double b);

/// Composite Simpson rule on n equispaced nodes (n odd, n >= 3).
QuadratureGrid composite_simpson(int n, double a, double b);

QuadratureGrid make_grid(QuadratureRule rule, int n, double a, double b);

/// Trapezoid weights for n equispaced samples with spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

}  // namespace beamk
