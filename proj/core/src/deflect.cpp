#include "beamk/deflect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beamk/errors.hpp"
#include "beamk/quadrature.hpp"

namespace beamk::deflect {

namespace {

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> load_at_nodes(const LoadProfile& w, std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = w.at(x[i]);
  return out;
}

}  // namespace

LoadProfile::LoadProfile(double x0, double h, std::vector<double> w) : x0_(x0), h_(h), w_(std::move(w)) {
  if (!std::isfinite(x0_)) throw DomainError("LoadProfile: x0 must be finite");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw DomainError("LoadProfile: grid spacing must be > 0");
  if (w_.size() < 2) throw DomainError("LoadProfile: need at least two samples");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i])) throw DomainError("LoadProfile: non-finite load at sample " + std::to_string(i));
  }
}

LoadProfile LoadProfile::sample(const std::function<double(double)>& w, double a, double b, std::size_t n) {
  if (n < 2 || !(b > a)) throw DomainError("LoadProfile::sample: need n >= 2 and a < b");
  const auto xs = uniform_grid(a, b, n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = w(xs[i]);
  return {a, (b - a) / static_cast<double>(n - 1), std::move(v)};
}

LoadProfile LoadProfile::zero(double a, double b, std::size_t n) {
  return sample([](double) { return 0.0; }, a, b, n);
}

double LoadProfile::at(double x) const {
  const double s = (x - x0_) / h_;
  const double last = static_cast<double>(w_.size() - 1);
  if (s < 0.0 || s > last) return 0.0;
  const auto i = std::min(static_cast<std::size_t>(s), w_.size() - 2);
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * w_[i] + t * w_[i + 1];
}

double LoadProfile::max_abs() const { return sup_norm(w_); }

FoundationLaw FoundationLaw::linear(double k) {
  return {[k](double u, double) { return k * u; }, [](double) { return 0.0; }};
}

FoundationLaw FoundationLaw::cubic(double k, double eps) {
  return {[k, eps](double u, double) { return k * u + eps * u * u * u; },
          [eps](double U) { return 3.0 * std::abs(eps) * U * U; }};
}

FoundationLaw FoundationLaw::with_bound(std::function<double(double, double)> phi, double lipschitz) {
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw DomainError("FoundationLaw: Lipschitz bound must be finite and >= 0");
  }
  return {std::move(phi), [lipschitz](double) { return lipschitz; }};
}

std::vector<double> apply_operator(const spectral::KernelMatrix& m, std::span<const double> u) {
  const std::size_t n = m.size();
  if (u.size() != n) {
    throw GridMismatchError("apply_operator: got " + std::to_string(u.size()) + " samples for a " +
                            std::to_string(n) + "-node grid");
  }
  // A = W^{1/2} K W^{1/2}, so K W u = W^{-1/2} A W^{1/2} u.
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) v(static_cast<Eigen::Index>(j)) = std::sqrt(m.grid.weights[j]) * u[j];
  const Eigen::VectorXd r = m.entries * v;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = r(static_cast<Eigen::Index>(i)) / std::sqrt(m.grid.weights[i]);
  return out;
}

std::vector<double> apply_operator(const spectral::KernelMatrix& m, const DeflectionProfile& profile) {
  if (profile.x.size() != m.size() || profile.u.size() != m.size()) {
    throw GridMismatchError("apply_operator: profile size does not match the operator grid");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double scale = std::max(1.0, std::abs(m.grid.nodes[i]));
    if (std::abs(profile.x[i] - m.grid.nodes[i]) > 1e-12 * scale) {
      throw GridMismatchError("apply_operator: profile node " + std::to_string(i) + " is not a quadrature node");
    }
  }
  return apply_operator(m, std::span<const double>(profile.u));
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2 || !(b > a)) throw DomainError("uniform_grid: need n >= 2 and a < b");
  std::vector<double> x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
  x.back() = b;
  return x;
}

std::vector<double> default_eval_grid(const LoadProfile& w, const BeamConfig& config) {
  const double h = w.spacing();
  const auto pad = static_cast<std::size_t>(std::ceil(10.0 / config.alpha() / h));
  const double a = w.x_min() - static_cast<double>(pad) * h;
  const std::size_t n = w.size() + 2 * pad;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
  return x;
}

DeflectionProfile solve_infinite(const LoadProfile& w, const BeamConfig& config, std::span<const double> eval_grid) {
  if (eval_grid.empty()) throw DomainError("solve_infinite: empty evaluation grid");
  const auto weights = trapezoid_weights(w.size(), w.spacing());
  const auto& values = w.values();

  DeflectionProfile out;
  out.solver = "infinite";
  out.x.assign(eval_grid.begin(), eval_grid.end());
  out.u.resize(eval_grid.size());
  for (std::size_t i = 0; i < eval_grid.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] == 0.0) continue;
      sum += weights[j] * spectral::kernel_K(std::abs(eval_grid[i] - w.x(j)), config) * values[j];
    }
    out.u[i] = sum;
  }

  const double margin = 10.0 / config.alpha();
  const auto [lo, hi] = std::minmax_element(eval_grid.begin(), eval_grid.end());
  if (*lo > w.x_min() - margin || *hi < w.x_max() + margin) {
    out.warnings.push_back("evaluation grid does not extend 10/alpha beyond the load support");
  }
  const double peak = sup_norm(out.u);
  const double edge = std::max(std::abs(out.u.front()), std::abs(out.u.back()));
  if (peak > 0.0 && edge > 1e-4 * peak) {
    out.warnings.push_back("deflection has not decayed at the grid ends (|u_edge|/|u|max = " +
                           std::to_string(edge / peak) + ")");
  }
  return out;
}

DeflectionProfile solve_nonlinear_fixed_point(const LoadProfile& w, const FoundationLaw& phi, const BeamConfig& config,
                                              double tol, int max_iter, const FixedPointOptions& options) {
  if (!(tol > 0.0)) throw DomainError("solve_nonlinear_fixed_point: tol must be > 0");
  if (max_iter < 1) throw DomainError("solve_nonlinear_fixed_point: max_iter must be >= 1");
  if (!phi.phi || !phi.lipschitz) throw DomainError("solve_nonlinear_fixed_point: incomplete foundation law");

  const auto m = spectral::discretize(config, options.n, options.rule);
  const double lambda1 = spectral::eigen_spectrum(m).eigenvalues.front();
  const auto& x = m.grid.nodes;
  const auto load = load_at_nodes(w, x);

  std::vector<double> u = apply_operator(m, load);
  const double lip = phi.lipschitz(sup_norm(u));
  const double rho = lip * lambda1;
  if (!(rho < 1.0)) {
    throw NonContractionError("solve_nonlinear_fixed_point: contraction factor rho = Lambda' * lambda_1 = " +
                                  std::to_string(lip) + " * " + std::to_string(lambda1) + " = " +
                                  std::to_string(rho) + " >= 1",
                              rho);
  }

  DeflectionProfile out;
  out.solver = "nonlinear";
  out.predicted_ratio = rho;
  const double k = config.k();
  std::vector<double> rhs(x.size());
  double prev_diff = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < x.size(); ++i) rhs[i] = load[i] - phi.phi(u[i], x[i]) + k * u[i];
    std::vector<double> next = apply_operator(m, rhs);
    double diff = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) diff = std::max(diff, std::abs(next[i] - u[i]));
    const double ratio = it == 1 ? std::numeric_limits<double>::quiet_NaN() : diff / prev_diff;
    out.history.push_back({it, diff, ratio});
    if (it > 1 && prev_diff > 0.0) out.observed_ratio = ratio;
    u = std::move(next);
    prev_diff = diff;
    if (!std::isfinite(diff)) break;
    if (diff <= tol) {
      out.iterations = it;
      out.x = x;
      out.u = std::move(u);
      if (phi.lipschitz(sup_norm(out.u)) > lip) {
        out.warnings.push_back("solution left the range used for the Lipschitz estimate");
      }
      return out;
    }
  }
  throw ConvergenceError("solve_nonlinear_fixed_point: no convergence after " + std::to_string(max_iter) +
                         " iterations; last step " + std::to_string(prev_diff) + ", predicted rho " +
                         std::to_string(rho) + ", last ratio " + std::to_string(out.observed_ratio));
}

double residual_ode(const DeflectionProfile& u, const LoadProfile& w, const FoundationLaw& phi,
                    const BeamConfig& config) {
  const std::size_t n = u.x.size();
  if (u.u.size() != n) throw DomainError("residual_ode: x and u differ in length");
  if (n < 9) throw DomainError("residual_ode: grid too coarse, need at least 5 interior points");
  const double h = (u.x.back() - u.x.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw DomainError("residual_ode: grid must be increasing");
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = u.x.front() + h * static_cast<double>(i);
    if (std::abs(u.x[i] - expected) > 1e-9 * std::max(h, std::abs(expected))) {
      throw DomainError("residual_ode: grid is not uniform at index " + std::to_string(i));
    }
  }

  const double ei_h4 = config.flexural_rigidity() / (h * h * h * h);
  double worst = 0.0;
  double w_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) w_max = std::max(w_max, std::abs(w.at(u.x[i])));
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d4 = u.u[i - 2] - 4.0 * u.u[i - 1] + 6.0 * u.u[i] - 4.0 * u.u[i + 1] + u.u[i + 2];
    const double r = ei_h4 * d4 + phi.phi(u.u[i], u.x[i]) - w.at(u.x[i]);
    worst = std::max(worst, std::abs(r));
  }
  return w_max > 0.0 ? worst / w_max : worst;
}

double residual_ode(const DeflectionProfile& u, const LoadProfile& w, const BeamConfig& config) {
  return residual_ode(u, w, FoundationLaw::linear(config.k()), config);
}

}  // namespace beamk::deflect
