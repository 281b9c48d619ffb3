#include "beamk/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "beamk/charfun.hpp"
#include "beamk/config.hpp"
#include "beamk/errors.hpp"

namespace beamk::scanner {

namespace {

using constants::kappa_upper_branch;
using constants::pi;
using constants::sqrt2;
using constants::two_pi;

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double inf = std::numeric_limits<double>::infinity();

// g - acosh(2 - cos g) >= 0, Taylor series below 0.1.
double phase_gap(double g) {
  if (g < 0.1) {
    const double g2 = g * g;
    double sum = 127741.0 / 1277337600.0;
    sum = sum * g2 - 493.0 / 1161216.0;
    sum = sum * g2 + 79.0 / 40320.0;
    sum = sum * g2 - 1.0 / 96.0;
    sum = sum * g2 + 1.0 / 12.0;
    return sum * g2 * g;
  }
  const double s = std::sin(0.5 * g);
  const double y = 2.0 * s * s;  // 1 - cos g
  return g - std::log1p(y + std::sqrt(y * (y + 2.0)));
}

// atanh(k) - atan(k) = 2 (k^3/3 + k^7/7 + k^11/11 + ...) for 0 <= k < 1.
double hyperbolic_gap(double k) {
  if (k < 0.1) {
    const double k3 = k * k * k;
    const double k4 = k3 * k;
    return 2.0 * k3 * (1.0 / 3.0 + k4 * (1.0 / 7.0 + k4 * (1.0 / 11.0 + k4 / 15.0)));
  }
  return std::atanh(k) - std::atan(k);
}

double min_cos_on(double lo, double hi) {
  // Odd multiple of pi inside [lo, hi] puts the minimum at -1.
  const double m = std::ceil((lo / pi - 1.0) / 2.0);
  if ((2.0 * m + 1.0) * pi <= hi) return -1.0;
  return std::min(std::cos(lo), std::cos(hi));
}

// Lower bound of psi - q over a cell (log-space form when saturated).
double enclosure_lower_bound(double k0, double k1, double L0, double L1) {
  const double g_lo = charfun::g(k0, L0);
  const double g_hi = charfun::g(k1, L1);
  const double f_lo = charfun::f(min_cos_on(g_lo, g_hi));
  const double q_hi = std::max(charfun::q(k0), charfun::q(k1));
  const double exponent = L0 * k0;
  if (exponent > charfun::log_saturation) {
    return exponent + std::log(f_lo) - std::log(q_hi);
  }
  return std::exp(exponent) * f_lo - q_hi;
}

struct Accumulator {
  double min_margin = inf;
  double err_at_min = 0.0;
  double witness_kappa = 0.0;
  double witness_L = 0.0;
  double min_below_threshold = inf;
  double max_err = 0.0;
  std::size_t cells = 0;
  std::size_t refined = 0;
  std::size_t certified = 0;
  std::size_t samples = 0;
  std::vector<MarginSample> kept;

  void absorb(const Accumulator& other) {
    if (other.min_margin < min_margin) {
      min_margin = other.min_margin;
      err_at_min = other.err_at_min;
      witness_kappa = other.witness_kappa;
      witness_L = other.witness_L;
    }
    min_below_threshold = std::min(min_below_threshold, other.min_below_threshold);
    max_err = std::max(max_err, other.max_err);
    cells += other.cells;
    refined += other.refined;
    certified += other.certified;
    samples += other.samples;
    kept.insert(kept.end(), other.kept.begin(), other.kept.end());
  }
};

class CellScanner {
 public:
  CellScanner(int max_depth, const ScanOptions& options) : max_depth_(max_depth), options_(options) {}

  void visit(double k0, double k1, double L0, double L1, int depth, Accumulator& acc) const {
    ++acc.cells;
    const double km = 0.5 * (k0 + k1);
    const double Lm = 0.5 * (L0 + L1);
    const double pts[5][2] = {{k0, L0}, {k1, L0}, {k0, L1}, {k1, L1}, {km, Lm}};
    double cell_err = 0.0;
    for (const auto& p : pts) {
      Margin m = margin(p[0], p[1]);
      if (options_.inverted) m.value = -m.value;
      record(p[0], p[1], m, depth, acc);
      cell_err = std::max(cell_err, m.error_bound);
    }
    if (options_.inverted) return;

    const double threshold = 10.0 * cell_err;
    if (enclosure_lower_bound(k0, k1, L0, L1) > threshold) {
      ++acc.certified;
      return;
    }
    if (depth >= max_depth_) return;
    ++acc.refined;
    visit(k0, km, L0, Lm, depth + 1, acc);
    visit(km, k1, L0, Lm, depth + 1, acc);
    visit(k0, km, Lm, L1, depth + 1, acc);
    visit(km, k1, Lm, L1, depth + 1, acc);
  }

 private:
  void record(double kappa, double L, const Margin& m, int depth, Accumulator& acc) const {
    ++acc.samples;
    acc.max_err = std::max(acc.max_err, m.error_bound);
    if (m.value < acc.min_margin) {
      acc.min_margin = m.value;
      acc.err_at_min = m.error_bound;
      acc.witness_kappa = kappa;
      acc.witness_L = L;
    }
    if (kappa <= kappa_upper_branch) acc.min_below_threshold = std::min(acc.min_below_threshold, m.value);
    if (options_.keep_samples) acc.kept.push_back({kappa, L, m.value, m.error_bound, m.log_space, depth});
  }

  int max_depth_;
  ScanOptions options_;
};

SubReport make_sub(std::string name, bool passed, std::size_t points, double worst, std::string detail) {
  return {std::move(name), passed, points, worst, std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void ScanRegion::validate() const {
  if (!(kappa_min > 0.0 && kappa_max > kappa_min && std::isfinite(kappa_max))) {
    throw DomainError("ScanRegion: need 0 < kappa_min < kappa_max");
  }
  if (!(L_min > 0.0 && L_max > L_min && std::isfinite(L_max))) {
    throw DomainError("ScanRegion: need 0 < L_min < L_max");
  }
  if (n_kappa < 2 || n_L < 2) throw DomainError("ScanRegion: grid dimensions must be >= 2");
  if (refine_depth < 0) throw DomainError("ScanRegion: refine_depth must be >= 0");
}

bool ScanReport::sub_reports_passed() const {
  return std::all_of(sub_reports.begin(), sub_reports.end(), [](const SubReport& s) { return s.passed; });
}

Margin margin(double kappa, double L) {
  const auto p = charfun::psi(kappa, L);
  const double qv = charfun::q(kappa);
  const double phase = charfun::g(kappa, L);
  if (p.saturated) {
    const double log_q = std::log(qv);
    return {p.log_value - log_q, 2.0 * eps * (L * kappa + phase + 4.0 + std::abs(log_q)), true};
  }
  // exp(L kappa) carries ~L kappa eps relative error, f(cos g) at most |g| eps
  // since |d log f(cos x)/dx| <= 1.
  const double err = 2.0 * eps * (p.value * (4.0 + L * kappa + phase) + 4.0 * qv);
  return {p.value - qv, err, false};
}

double margin_near_zero(double kappa, double L) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("margin_near_zero: kappa must lie in (0, 1), got " + std::to_string(kappa));
  }
  if (!(L > 0.0) || std::isinf(L)) throw DomainError("margin_near_zero: L must be > 0");
  // ghat(kappa) = -4 atan(kappa): both vanish at 0 and share the derivative -4/(kappa^2 + 1).
  const double phase = L * kappa + 4.0 * std::atan(kappa);
  const double log_ratio = phase_gap(phase) + 4.0 * hyperbolic_gap(kappa);
  return charfun::q(kappa) * std::expm1(log_ratio);
}

ScanReport scan_psi_minus_q(const ScanRegion& region, const ScanOptions& options) {
  region.validate();
  const int cols = region.n_kappa - 1;
  const int rows = region.n_L - 1;
  const double dk = (region.kappa_max - region.kappa_min) / cols;
  const double dL = (region.L_max - region.L_min) / rows;
  auto kappa_at = [&](int i) { return i == cols ? region.kappa_max : region.kappa_min + i * dk; };
  auto L_at = [&](int j) { return j == rows ? region.L_max : region.L_min + j * dL; };

  const CellScanner scanner(region.refine_depth, options);
  std::vector<Accumulator> per_column(static_cast<std::size_t>(cols));
  auto work = [&](int first, int stride) {
    for (int i = first; i < cols; i += stride) {
      Accumulator& acc = per_column[static_cast<std::size_t>(i)];
      for (int j = 0; j < rows; ++j) {
        scanner.visit(kappa_at(i), kappa_at(i + 1), L_at(j), L_at(j + 1), 0, acc);
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<int>(t), static_cast<int>(threads));
  }

  // Reduce in column order so the report does not depend on scheduling.
  Accumulator total;
  for (const auto& acc : per_column) total.absorb(acc);

  ScanReport report;
  report.region = region;
  report.inverted = options.inverted;
  report.min_margin = total.min_margin;
  report.min_margin_error_bound = total.err_at_min;
  report.witness_kappa = total.witness_kappa;
  report.witness_L = total.witness_L;
  report.min_margin_below_threshold = total.min_below_threshold;
  report.cells_evaluated = total.cells;
  report.cells_refined = total.refined;
  report.cells_certified = total.certified;
  report.samples_evaluated = total.samples;
  report.max_error_bound = total.max_err;
  report.all_positive = report.min_margin > 0.0;
  report.samples = std::move(total.kept);
  return report;
}

MollifiedChain check_mollified_chain(double t, double L) {
  if (!(t > 1.5 * pi && t < two_pi)) {
    throw DomainError("check_mollified_chain: t must lie in (3pi/2, 2pi), got " + std::to_string(t));
  }
  if (!(L > 0.0)) throw DomainError("check_mollified_chain: L must be > 0");
  MollifiedChain chain;
  chain.t = t;
  chain.L = L;
  chain.kappa = charfun::g_inverse(t, L);
  chain.psi_tilde = charfun::psi(chain.kappa, L).value;
  chain.f_cos_t = charfun::f(std::cos(t));
  chain.q_ghat_inverse = charfun::q_of_ghat_inverse(t);
  chain.q_tilde = charfun::q(chain.kappa);
  chain.precondition = chain.kappa > 1.0;
  return chain;
}

CubicCoefficients cubic_coefficients(double kappa) {
  if (!(kappa > kappa_upper_branch) || std::isinf(kappa)) {
    throw DomainError("cubic_coefficients: kappa must exceed 1 + sqrt(2), got " + std::to_string(kappa));
  }
  const double qv = charfun::q(kappa);
  // 1 - q = 4 kappa / (kappa + 1)^2 without cancellation for large kappa.
  const double one_minus_q = 4.0 * kappa / ((kappa + 1.0) * (kappa + 1.0));
  const double theta = charfun::phase_arctan(kappa);
  const double denom = 4.0 - 3.0 * qv;
  CubicCoefficients out;
  out.kappa = kappa;
  out.theta = theta;
  out.a = (12.0 * one_minus_q + 9.0 * qv * theta) / denom;
  out.b = (24.0 * one_minus_q - qv * theta * (9.0 * theta - 24.0)) / denom;
  out.c = (24.0 * one_minus_q + 3.0 * qv * theta * (theta * theta - 4.0 * theta + 8.0)) / denom;
  return out;
}

InverseOrdering check_inverse_ordering(double t, std::span<const double> L_list) {
  if (!(t > 0.0 && t < two_pi)) {
    throw DomainError("check_inverse_ordering: t must lie in (0, 2pi), got " + std::to_string(t));
  }
  if (L_list.empty()) throw DomainError("check_inverse_ordering: empty L list");
  InverseOrdering out;
  out.t = t;
  out.ghat_inverse = charfun::ghat_inverse(t);
  out.L_values.assign(L_list.begin(), L_list.end());
  for (double L : out.L_values) {
    if (!(L > 0.0)) throw DomainError("check_inverse_ordering: every L must be > 0");
  }
  std::sort(out.L_values.begin(), out.L_values.end(), std::greater<>());
  out.below_limit = true;
  out.increasing_as_L_decreases = true;
  for (std::size_t i = 0; i < out.L_values.size(); ++i) {
    const double kappa = charfun::g_inverse(t, out.L_values[i]);
    out.kappas.push_back(kappa);
    if (!(kappa < out.ghat_inverse)) out.below_limit = false;
    if (i > 0 && !(kappa > out.kappas[i - 1])) out.increasing_as_L_decreases = false;
  }
  return out;
}

SmallKappaCheck check_small_kappa(std::span<const double> L_list, int n_kappa) {
  if (L_list.empty()) throw DomainError("check_small_kappa: empty L list");
  if (n_kappa < 1) throw DomainError("check_small_kappa: n_kappa must be >= 1");
  SmallKappaCheck out;
  out.min_margin = inf;
  for (double L : L_list) {
    if (!(L > 0.0)) throw DomainError("check_small_kappa: every L must be > 0");
    for (int i = 1; i <= n_kappa; ++i) {
      const double kappa = static_cast<double>(i) / n_kappa;
      const double m = margin(kappa, L).value;
      if (m < out.min_margin) {
        out.min_margin = m;
        out.witness_kappa = kappa;
        out.witness_L = L;
      }
    }
  }
  out.holds = out.min_margin > 0.0;
  return out;
}

NearZeroCheck check_near_zero(double L, int points_per_decade) {
  if (points_per_decade < 1) throw DomainError("check_near_zero: points_per_decade must be >= 1");
  NearZeroCheck out;
  out.L = L;
  const int n = 7 * points_per_decade + 1;
  for (int i = 0; i < n; ++i) {
    const double kappa = std::pow(10.0, -8.0 + static_cast<double>(i) / points_per_decade);
    out.kappas.push_back(kappa);
    out.margins.push_back(margin_near_zero(kappa, L));
  }
  out.nonnegative = std::all_of(out.margins.begin(), out.margins.end(), [](double m) { return m >= 0.0; });
  out.increasing = std::adjacent_find(out.margins.begin(), out.margins.end(),
                                      [](double a, double b) { return !(b > a); }) == out.margins.end();
  return out;
}

std::vector<SubReport> auxiliary_checks(const ScanRegion& region, double threshold_min_margin) {
  region.validate();
  std::vector<SubReport> out;
  const double L_mid = std::sqrt(region.L_min * region.L_max);
  const std::vector<double> L_probe = {region.L_min, L_mid, region.L_max};

  {
    bool ok = true;
    double worst = inf;
    std::size_t points = 0;
    for (double L : L_probe) {
      const auto nz = check_near_zero(L);
      ok = ok && nz.nonnegative && nz.increasing;
      worst = std::min(worst, nz.margins.front());
      points += nz.kappas.size();
    }
    out.push_back(make_sub("near_zero_expansion", ok, points, worst,
                           "margin >= 0 and increasing on kappa = 1e-8 .. 1e-1"));
  }
  {
    std::vector<double> Ls = {region.L_min, 1.0, region.L_max};
    const auto sk = check_small_kappa(Ls);
    out.push_back(make_sub("small_kappa_positivity", sk.holds, Ls.size() * 10000, sk.min_margin,
                           "min at kappa=" + fmt(sk.witness_kappa) + " L=" + fmt(sk.witness_L)));
  }
  out.push_back(make_sub("threshold_kappa_bound", threshold_min_margin > 0.0, 0, threshold_min_margin,
                         "scan samples with kappa <= 1 + sqrt(2) all have positive margin"));
  {
    // From the first index with L kappa >= 2.5 on, psi at least doubles per
    // step (f_min e^{L kappa} > 2) while q moves by less than 1, so the sampled
    // margins must increase; the last one must be huge or saturated.
    bool ok = true;
    double worst = inf;
    std::size_t points = 0;
    for (double L : L_probe) {
      double prev = -inf;
      bool diverged = false;
      for (double kappa = 10.0; kappa < 1e12; kappa *= 2.0) {
        const Margin m = margin(kappa, L);
        ++points;
        if (m.log_space) {
          diverged = true;
          break;
        }
        if (L * kappa >= 2.5) {
          if (!(m.value > prev)) ok = false;
          prev = m.value;
          worst = std::min(worst, m.value);
        }
        if (m.value > 1e6) diverged = true;
      }
      ok = ok && diverged;
    }
    out.push_back(make_sub("psi_divergence", ok, points, worst,
                           "margin along kappa = 10 * 2^j increases once L kappa >= 2.5 and diverges"));
  }
  {
    constexpr int n = 10000;
    const double lo = std::log10(kappa_upper_branch + 1e-6);
    double worst = inf;
    for (int j = 1; j <= n; ++j) {
      const double kappa = std::pow(10.0, lo + (6.0 - lo) * j / n);
      const auto abc = cubic_coefficients(kappa);
      worst = std::min({worst, abc.a, abc.b, abc.c});
    }
    out.push_back(make_sub("cubic_coefficients_positive", worst > 0.0, n, worst,
                           "a, b, c > 0 on log-spaced kappa in (1+sqrt2+1e-6, 1e6]"));
  }
  {
    const double ts[] = {0.5, pi, 1.5 * pi, 5.5};
    const double Ls[] = {10.0, 1.0, 0.1, 0.01, 0.001};
    bool ok = true;
    double worst = inf;
    for (double t : ts) {
      const auto ord = check_inverse_ordering(t, Ls);
      ok = ok && ord.holds();
      worst = std::min(worst, ord.ghat_inverse - ord.kappas.back());
    }
    out.push_back(make_sub("inverse_ordering", ok, 4 * 5, worst,
                           "g_L^-1(t) < ghat^-1(-t), increasing as L decreases"));
  }
  {
    constexpr int n = 200;
    constexpr double L = 0.05;
    bool ok = true;
    double worst = inf;
    for (int i = 0; i < n; ++i) {
      const double t = 1.5 * pi + (i + 0.5) / n * 0.5 * pi;
      const auto chain = check_mollified_chain(t, L);
      ok = ok && chain.precondition && chain.holds();
      worst = std::min({worst, chain.psi_tilde - chain.f_cos_t, chain.f_cos_t - chain.q_ghat_inverse,
                        chain.q_ghat_inverse - chain.q_tilde});
    }
    out.push_back(make_sub("mollified_chain", ok, n, worst,
                           "psi~ > f(cos t) > q(ghat^-1(-t)) > q~ at L = 0.05"));
  }
  {
    constexpr int n = 10000;
    double worst = inf;
    for (int i = 1; i < n; ++i) {
      const double t = 1.5 * pi + 0.5 * pi * i / n;
      // cos^2 t - 2 cos t + 1 = (1 - cos t)^2 = 4 sin^4(t/2).
      const double s = std::sin(0.5 * t);
      worst = std::min(worst, 4.0 * s * s * s * s);
    }
    out.push_back(make_sub("polynomial_tail", worst > 0.0, n - 1, worst,
                           "cos^2 t - 2 cos t + 1 > 0 on (3pi/2, 2pi)"));
  }
  {
    constexpr int n = 20000;
    double worst = inf;
    bool ok = true;
    for (int i = 0; i <= n; ++i) {
      const double x = -4.0 * pi + 8.0 * pi * i / n;
      const double fv = charfun::f_of_angle(x);
      ok = ok && fv >= constants::f_min - 1e-15 && fv <= 1.0 + 1e-15;
      if (std::abs(std::remainder(x, two_pi)) > 1e-12) {
        const double r = charfun::sine_ratio(x);
        ok = ok && std::abs(r) <= 1.0 + 1e-15;
        worst = std::min(worst, 1.0 - std::abs(r));
      }
      const double c = std::cos(x);
      ok = ok && std::abs(((2.0 - c) * (2.0 - c) - 1.0) - (1.0 - c) * (3.0 - c)) <= 1e-14;
    }
    out.push_back(make_sub("phase_bounds", ok, n + 1, worst,
                           "3-2sqrt2 <= f(cos x) <= 1, |sin x|/sqrt((2-cos x)^2-1) <= 1, factor identity"));
  }
  {
    bool ok = true;
    double worst = inf;
    std::size_t points = 0;
    for (double L : L_probe) {
      for (int i = 1; i <= 2000; ++i) {
        const double kappa = region.kappa_min + (region.kappa_max - region.kappa_min) * i / 2000.0;
        if (L * kappa > charfun::log_saturation) continue;
        if (std::abs(std::remainder(charfun::g(kappa, L), two_pi)) < 1e-6) continue;
        const double p = charfun::psi(kappa, L).value;
        const double slack = charfun::psi_prime(kappa, L) + p * 4.0 / (kappa * kappa + 1.0);
        ok = ok && slack >= -1e-12 * std::max(1.0, p);
        worst = std::min(worst, slack / std::max(1.0, p));
        ++points;
      }
    }
    out.push_back(make_sub("derivative_lower_bound", ok, points, worst,
                           "psi' >= -psi * 4/(kappa^2+1) at differentiable points"));
  }
  return out;
}

ScanReport certify(const ScanRegion& region, const ScanOptions& options) {
  ScanReport report = scan_psi_minus_q(region, options);
  report.sub_reports = auxiliary_checks(region, report.min_margin_below_threshold);
  return report;
}

}  // namespace beamk::scanner
