#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

/// Floating-point certification of psi_L(kappa) > q(kappa) and the auxiliary
/// inequalities around it. This is a sampled check with per-sample rounding
/// error bounds and per-cell enclosure bounds, not an interval-arithmetic proof.

namespace beamk::scanner {

/// Rectangle [kappa_min, kappa_max] x [L_min, L_max] with an equispaced
/// n_kappa x n_L grid of corner points.
struct ScanRegion {
  double kappa_min = 0.01;
  double kappa_max = 50.0;
  double L_min = 0.01;
  double L_max = 50.0;
  int n_kappa = 500;
  int n_L = 200;
  int refine_depth = 4;

  /// Throws DomainError on an empty or non-positive region or a grid below 2x2.
  void validate() const;
};

struct ScanOptions {
  /// Compare q > psi instead. Exists so callers can exercise the failure path.
  bool inverted = false;
  /// Worker threads for cell evaluation; results do not depend on this.
  unsigned threads = 1;
  /// Keep every evaluated sample in the report (for CSV export).
  bool keep_samples = false;
};

/// psi - q at one point. In saturated cells (L kappa > 700) the value is
/// log psi - log q instead and log_space is set.
struct Margin {
  double value;
  double error_bound;
  bool log_space;
};

Margin margin(double kappa, double L);

/// psi - q for 0 < kappa < 1 without cancellation, as q * expm1(D) with
///   D = [g - acosh(2 - cos g)] + 4 [atanh(kappa) - atan(kappa)],
/// g = L kappa + 4 atan(kappa). Both brackets are nonnegative and are summed
/// from their Taylor series when small, so the O(kappa^3) margin near kappa = 0
/// keeps full relative accuracy.
double margin_near_zero(double kappa, double L);

struct MarginSample {
  double kappa;
  double L;
  double margin;
  double error_bound;
  bool log_space;
  int depth;
};

/// Outcome of one auxiliary inequality check.
struct SubReport {
  std::string name;
  bool passed = false;
  std::size_t points = 0;
  /// Smallest slack seen (how far the inequality is from failing).
  double worst = 0.0;
  std::string detail;
};

struct ScanReport {
  ScanRegion region;
  bool inverted = false;
  double min_margin = 0.0;
  double min_margin_error_bound = 0.0;
  double witness_kappa = 0.0;
  double witness_L = 0.0;
  /// Minimum over samples with kappa <= 1 + sqrt(2).
  double min_margin_below_threshold = 0.0;
  std::size_t cells_evaluated = 0;
  std::size_t cells_refined = 0;
  /// Cells whose enclosure lower bound exceeds 10x the rounding estimate.
  std::size_t cells_certified = 0;
  std::size_t samples_evaluated = 0;
  double max_error_bound = 0.0;
  /// min_margin > 0.
  bool all_positive = false;
  std::vector<SubReport> sub_reports;
  std::vector<MarginSample> samples;

  bool sub_reports_passed() const;
};

/// Grid scan with adaptive quad-splitting. Each cell is sampled at its four
/// corners and its center; a cell is split (up to region.refine_depth) while
/// its enclosure lower bound
///   exp(L_lo kappa_lo) min f(cos g) - max(q(kappa_lo), q(kappa_hi))
/// stays below ten times the local rounding estimate. g is increasing in both
/// kappa and L, so min f(cos g) is taken over [g(kappa_lo, L_lo), g(kappa_hi, L_hi)].
ScanReport scan_psi_minus_q(const ScanRegion& region, const ScanOptions& options = {});

/// The chain psi~_L(t) > f(cos t) > q(ghat^-1(-t)) > q~_L(t) on 3pi/2 < t < 2pi,
/// where psi~_L = psi_L o g_L^-1 and q~_L = q o g_L^-1.
struct MollifiedChain {
  double t = 0.0;
  double L = 0.0;
  double kappa = 0.0;  ///< g_L^-1(t)
  double psi_tilde = 0.0;
  double f_cos_t = 0.0;
  double q_ghat_inverse = 0.0;
  double q_tilde = 0.0;
  /// g_L^-1(t) > 1, the condition under which q~_L(t) < q(ghat^-1(-t)) follows.
  bool precondition = false;

  bool psi_above_f() const { return psi_tilde > f_cos_t; }
  bool f_above_q_limit() const { return f_cos_t > q_ghat_inverse; }
  bool q_limit_above_q_tilde() const { return q_ghat_inverse > q_tilde; }
  bool holds() const { return psi_above_f() && f_above_q_limit() && q_limit_above_q_tilde(); }
};

MollifiedChain check_mollified_chain(double t, double L);

/// Coefficients of the cubic (L kappa)^3 + a (L kappa)^2 + b L kappa + c that
/// a tangency point of psi_L and q beyond 1 + sqrt(2) would have to make negative.
struct CubicCoefficients {
  double kappa = 0.0;
  double theta = 0.0;  ///< phase_arctan(kappa), in (0, pi/2) here
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool all_positive() const { return a > 0.0 && b > 0.0 && c > 0.0; }
};

/// Throws DomainError unless kappa > 1 + sqrt(2).
CubicCoefficients cubic_coefficients(double kappa);

/// g_L^-1(t) < ghat^-1(-t) for each L, increasing as L decreases.
struct InverseOrdering {
  double t = 0.0;
  double ghat_inverse = 0.0;
  std::vector<double> L_values;  ///< sorted descending
  std::vector<double> kappas;    ///< g_L^-1(t) for each L_values entry
  bool below_limit = false;
  bool increasing_as_L_decreases = false;
  bool holds() const { return below_limit && increasing_as_L_decreases; }
};

/// Throws DomainError unless 0 < t < 2 pi and every L is positive.
InverseOrdering check_inverse_ordering(double t, std::span<const double> L_list);

/// psi_L - q > 0 on the grid kappa_i = i / n_kappa (i = 1..n_kappa) of (0, 1]
/// for every L in the list.
struct SmallKappaCheck {
  double min_margin = 0.0;
  double witness_kappa = 0.0;
  double witness_L = 0.0;
  bool holds = false;
};

SmallKappaCheck check_small_kappa(std::span<const double> L_list, int n_kappa = 10000);

/// margin_near_zero on kappa = 10^-1 ... 10^-8 (points_per_decade per decade):
/// nonnegative and strictly increasing in kappa.
struct NearZeroCheck {
  double L = 0.0;
  std::vector<double> kappas;  ///< increasing
  std::vector<double> margins;
  bool nonnegative = false;
  bool increasing = false;
};

NearZeroCheck check_near_zero(double L, int points_per_decade = 4);

/// All auxiliary checks, each summarized as a SubReport. `threshold_min_margin`
/// is the scan's minimum over kappa <= 1 + sqrt(2).
std::vector<SubReport> auxiliary_checks(const ScanRegion& region, double threshold_min_margin);

/// scan_psi_minus_q followed by auxiliary_checks.
ScanReport certify(const ScanRegion& region, const ScanOptions& options = {});

}  // namespace beamk::scanner
