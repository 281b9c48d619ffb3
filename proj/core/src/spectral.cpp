#include "beamk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "beamk/charfun.hpp"
#include "beamk/errors.hpp"

namespace beamk::spectral {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

Parity classify(double score) {
  if (score > parity_threshold) return Parity::even;
  if (score < -parity_threshold) return Parity::odd;
  return Parity::unclassified;
}

}  // namespace

double kernel_K(double y, const BeamConfig& config) {
  if (!(y >= 0.0)) throw DomainError("kernel_K: y must be >= 0, got " + std::to_string(y));
  const double a = config.alpha() * y / constants::sqrt2;
  return config.alpha() / (2.0 * config.k()) * std::exp(-a) * std::sin(a + 0.25 * constants::pi);
}

double KernelMatrix::symmetry_defect() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }

KernelMatrix discretize(const BeamConfig& config, int n, QuadratureRule rule) {
  if (n < 4) throw DomainError("discretize: n must be >= 4, got " + std::to_string(n));
  QuadratureGrid grid = make_grid(rule, n, -config.l(), config.l());
  Eigen::VectorXd sw(n);
  for (int i = 0; i < n; ++i) sw(i) = std::sqrt(grid.weights[static_cast<std::size_t>(i)]);

  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    const double xj = grid.nodes[static_cast<std::size_t>(j)];
    a(j, j) = sw(j) * kernel_K(0.0, config) * sw(j);
    for (int i = j + 1; i < n; ++i) {
      const double v = sw(i) * kernel_K(grid.nodes[static_cast<std::size_t>(i)] - xj, config) * sw(j);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return {std::move(grid), std::move(a), config, rule};
}

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::unclassified:
      break;
  }
  return "unclassified";
}

std::size_t Spectrum::reliable_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const double err = discretization_error.empty() ? residual_bound
                                                    : std::max(discretization_error[i], residual_bound);
    if (!(eigenvalues[i] > 10.0 * err)) break;
    ++count;
  }
  return count;
}

Spectrum eigen_spectrum(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("eigen_spectrum: need a non-empty square matrix");
  if (!(tol > 0.0)) throw DomainError("eigen_spectrum: tol must be > 0");
  const Eigen::Index n = a.rows();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("eigen_spectrum: QR iteration did not converge for n = " + std::to_string(n) +
                           " (Eigen info code " + std::to_string(static_cast<int>(solver.info())) + ")");
  }

  Spectrum s;
  s.eigenvalues.resize(static_cast<std::size_t>(n));
  s.eigenvectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index i = 0; i < n; ++i) {
    s.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    s.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }

  const Eigen::MatrixXd r = a * s.eigenvectors - s.eigenvectors * Eigen::VectorXd::Map(s.eigenvalues.data(), n).asDiagonal();
  s.residuals.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    s.residuals[static_cast<std::size_t>(i)] = r.col(i).norm();
    s.residual_bound = std::max(s.residual_bound, s.residuals[static_cast<std::size_t>(i)]);
  }
  const double scale = std::max(1.0, std::abs(s.eigenvalues.front()));
  if (s.residual_bound > tol * scale) {
    throw EigenSolverError("eigen_spectrum: residual " + std::to_string(s.residual_bound) +
                           " exceeds tolerance " + std::to_string(tol * scale));
  }

  s.parity_scores.resize(static_cast<std::size_t>(n));
  s.parity.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd v = s.eigenvectors.col(i);
    const double score = v.dot(v.reverse()) / v.squaredNorm();
    s.parity_scores[static_cast<std::size_t>(i)] = score;
    s.parity[static_cast<std::size_t>(i)] = classify(score);
  }
  return s;
}

Spectrum eigen_spectrum(const KernelMatrix& m, double tol) { return eigen_spectrum(m.entries, tol); }

void estimate_discretization_error(Spectrum& s, const Spectrum& coarse) {
  s.discretization_error.assign(s.n(), inf);
  const std::size_t common = std::min(s.n(), coarse.n());
  for (std::size_t i = 0; i < common; ++i) {
    s.discretization_error[i] = std::abs(s.eigenvalues[i] - coarse.eigenvalues[i]);
  }
}

Spectrum analyze(const BeamConfig& config, int n, QuadratureRule rule, double tol) {
  Spectrum fine = eigen_spectrum(discretize(config, n, rule), tol);
  int coarse_n = n / 2;
  if (rule == QuadratureRule::composite_simpson && coarse_n % 2 == 0) ++coarse_n;
  if (coarse_n >= 4) estimate_discretization_error(fine, eigen_spectrum(discretize(config, coarse_n, rule), tol));
  return fine;
}

Confinement verify_confinement(const Spectrum& s, const BeamConfig& config, double tol, double margin_floor) {
  if (!(tol > 0.0) || !(margin_floor >= 0.0)) {
    throw DomainError("verify_confinement: need tol > 0 and margin_floor >= 0");
  }
  double margin = margin_floor / config.k();
  for (double e : s.discretization_error) {
    if (std::isfinite(e)) margin = std::max(margin, e);
  }
  Confinement c;
  c.lower_limit = -tol;
  c.upper_limit = 1.0 / config.k() - margin;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const double lambda = s.eigenvalues[i];
    if (!(lambda > c.lower_limit && lambda < c.upper_limit)) c.violations.push_back({i, lambda});
  }
  c.confined = c.violations.empty();
  return c;
}

double characteristic_residual(double lambda, const BeamConfig& config) {
  const auto point = SpectralPoint::from_lambda(lambda, config.k());
  const auto p = charfun::psi(point.kappa(), config.L());
  if (p.saturated) return inf;
  return p.value - charfun::q(point.kappa());
}

DecayFit decay_fit(std::span<const double> eigenvalues, std::size_t n_lo, std::size_t n_hi) {
  if (n_lo < 1 || n_hi <= n_lo) {
    throw DomainError("decay_fit: need 1 <= n_lo < n_hi, got [" + std::to_string(n_lo) + ", " +
                      std::to_string(n_hi) + "]");
  }
  if (n_hi > eigenvalues.size()) {
    throw InsufficientEigenvaluesError("decay_fit: window ends at " + std::to_string(n_hi) + " but only " +
                                       std::to_string(eigenvalues.size()) + " eigenvalues are usable");
  }
  const std::size_t m = n_hi - n_lo + 1;
  std::vector<double> xs(m), ys(m);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lambda = eigenvalues[n_lo - 1 + i];
    if (!(lambda > 0.0)) {
      throw InsufficientEigenvaluesError("decay_fit: non-positive eigenvalue at index " + std::to_string(n_lo + i));
    }
    xs[i] = std::log(static_cast<double>(n_lo + i));
    ys[i] = std::log(lambda);
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  return fit;
}

DecayFit decay_fit(const Spectrum& s, std::size_t n_lo, std::size_t n_hi) {
  const std::size_t reliable = s.reliable_count();
  return decay_fit(std::span<const double>(s.eigenvalues.data(), reliable), n_lo, n_hi);
}

double min_gap(const Spectrum& s, std::size_t count) {
  count = std::min(count, s.n());
  double gap = inf;
  for (std::size_t i = 1; i < count; ++i) gap = std::min(gap, s.eigenvalues[i - 1] - s.eigenvalues[i]);
  return gap;
}

bool parity_alternates(const Spectrum& s, std::size_t count) {
  if (count > s.parity.size()) return false;
  for (std::size_t i = 0; i < count; ++i) {
    if (s.parity[i] == Parity::unclassified) return false;
    if (i > 0 && s.parity[i] == s.parity[i - 1]) return false;
  }
  return true;
}

}  // namespace beamk::spectral
