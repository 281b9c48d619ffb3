#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "beamk/charfun.hpp"
#include "beamk/config.hpp"
#include "beamk/errors.hpp"
#include "fixtures.hpp"

using namespace beamk;
using namespace beamk::charfun;
using beamk::constants::kappa_lower_branch;
using beamk::constants::kappa_upper_branch;
using std::numbers::pi;

namespace {

double rel_err(double got, double want, double scale) { return std::abs(got - want) / scale; }

template <class F>
double central_difference(F&& fn, double x, double h) {
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

}  // namespace

TEST(Charfun, ExactPointValues) {
  EXPECT_NEAR(q(0.0), 1.0, 1e-12);
  EXPECT_NEAR(q(1.0), 0.0, 1e-12);
  EXPECT_NEAR(f(1.0), 1.0, 1e-12);
  EXPECT_NEAR(f(-1.0), 3.0 - 2.0 * std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(ghat(0.0).value, 0.0, 1e-12);
  EXPECT_NEAR(ghat(kappa_lower_branch).value, -pi / 2, 1e-12);
  EXPECT_NEAR(ghat(kappa_upper_branch).value, -3 * pi / 2, 1e-12);
  for (double L : {0.01, 1.0, 50.0}) {
    EXPECT_NEAR(psi(0.0, L).value, 1.0, 1e-12);
    EXPECT_NEAR(g(0.0, L), 0.0, 1e-12);
  }
}

TEST(Charfun, GhatBranchesAreContinuous) {
  for (double b : {kappa_lower_branch, kappa_upper_branch}) {
    const auto below = ghat(b - 1e-9);
    const auto above = ghat(b + 1e-9);
    EXPECT_NE(below.branch, above.branch);
    EXPECT_NEAR(below.value, above.value, 1e-6);
    EXPECT_NEAR(below.value, ghat(b).value, 1e-6);
  }
}

TEST(Charfun, GhatMatchesMinusFourArctan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double k = std::pow(10.0, u(rng) - 3.0);
    EXPECT_NEAR(ghat(k).value, -4.0 * std::atan(k), 1e-13 * std::max(1.0, 4.0 * std::atan(k))) << k;
  }
}

TEST(Charfun, GhatIsDecreasingAndBounded) {
  double prev = ghat(0.0).value;
  for (int i = 1; i <= 5000; ++i) {
    const double k = 0.002 * i;
    const double v = ghat(k).value;
    EXPECT_LT(v, prev);
    EXPECT_GT(v, -2 * pi);
    prev = v;
  }
}

TEST(Charfun, FBoundsAndAngleForm) {
  for (int i = 0; i <= 4000; ++i) {
    const double x = -3 * pi + 6 * pi * i / 4000.0;
    const double fa = f_of_angle(x);
    EXPECT_GE(fa, constants::f_min - 1e-15);
    EXPECT_LE(fa, 1.0 + 1e-15);
    // The direct forms cancel near multiples of 2 pi; evaluate them in long double.
    const long double c = std::cos(static_cast<long double>(x));
    const long double s = std::sin(static_cast<long double>(x));
    const long double f_ref = 1.0L / ((2.0L - c) + std::sqrt((1.0L - c) * (3.0L - c)));
    EXPECT_NEAR(fa, static_cast<double>(f_ref), 1e-15);
    if (std::abs(std::remainder(x, 2 * pi)) > 1e-6) {
      EXPECT_NEAR(sine_ratio(x), static_cast<double>(s / std::sqrt((1.0L - c) * (3.0L - c))), 1e-12);
    }
  }
  // Conjugate form agrees with 2 - t - sqrt((1-t)(3-t)) where the latter is accurate.
  for (double t : {-1.0, -0.5, 0.0, 0.5}) {
    EXPECT_NEAR(f(t), (2 - t) - std::sqrt((1 - t) * (3 - t)), 1e-14);
  }
}

TEST(Charfun, ReferenceValues) {
  EXPECT_NEAR(psi(1.0, 1.0).value, fixtures::psi_1_L1, 1e-14);
  EXPECT_NEAR(psi_prime(1.0, 1.0), fixtures::psi_prime_1_L1, 1e-13);
  EXPECT_NEAR(g_inverse(0.5, 2.0), fixtures::g_inverse_half_L2, 1e-12);
  EXPECT_NEAR(g_inverse(0.5, 0.2), fixtures::g_inverse_half_L02, 1e-12);
  EXPECT_NEAR(ghat_inverse(0.5), fixtures::ghat_inverse_half, 1e-13);
  EXPECT_NEAR(g_inverse(1.5 * pi, 1e-5), fixtures::g_inverse_3pi2_L1em5, 1e-9);
}

TEST(Charfun, DerivativesMatchCentralDifferences) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const double k = 10.0 * unit(rng) + 1e-3;
    const double L = 0.01 + 10.0 * unit(rng);
    const double t = -0.999 + 1.989 * unit(rng);
    const double h = 1e-5;

    const double dq = q_prime(k);
    EXPECT_LE(rel_err(central_difference([](double x) { return q(x); }, k, h), dq, std::max(std::abs(dq), 1e-8)),
              1e-6);
    const double df = f_prime(t);
    EXPECT_LE(rel_err(central_difference([](double x) { return f(x); }, t, 1e-6), df, std::abs(df)), 1e-6);
    const double dgh = ghat_prime(k);
    EXPECT_LE(rel_err(central_difference([](double x) { return ghat(x).value; }, k, h), dgh, std::abs(dgh)), 1e-6);
    const double dg = g_prime(k, L);
    EXPECT_LE(rel_err(central_difference([L](double x) { return g(x, L); }, k, h), dg, std::abs(dg)), 1e-6);

    // psi has kinks where g is a multiple of 2 pi; stay clear of them.
    if (std::abs(std::remainder(g(k, L), 2 * pi)) < 1e-3 || L * k > 300) continue;
    const double dp = psi_prime(k, L);
    const double scale = psi(k, L).value * (L + g_prime(k, L));
    const double fd = central_difference([L](double x) { return psi(x, L).value; }, k, 1e-6 * std::max(1.0, k));
    EXPECT_LE(rel_err(fd, dp, scale), 1e-6) << "kappa=" << k << " L=" << L;
    ++checked;
  }
}

TEST(Charfun, PsiPrimeRejectsKinks) {
  const double L = 1.0;
  const double k = g_inverse(2 * pi, L);
  EXPECT_THROW(psi_prime(k, L), NonDifferentiableError);
  EXPECT_THROW(f_prime(1.0), NonDifferentiableError);
}

TEST(Charfun, PsiSaturatesInLogSpace) {
  const auto p = psi(1000.0, 1.0);
  EXPECT_TRUE(p.saturated);
  EXPECT_TRUE(std::isinf(p.value));
  EXPECT_NEAR(p.log_value, 1000.0 + std::log(f_of_angle(g(1000.0, 1.0))), 1e-9);
  EXPECT_FALSE(psi(600.0, 1.0).saturated);
}

TEST(Charfun, GInverseRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double L = std::pow(10.0, -3.0 + 4.0 * unit(rng));
    const double t = 40.0 * unit(rng);
    const double k = g_inverse(t, L);
    EXPECT_NEAR(g(k, L), t, 1e-11 * std::max(1.0, t)) << "t=" << t << " L=" << L;
  }
  EXPECT_EQ(g_inverse(0.0, 1.0), 0.0);
}

TEST(Charfun, GhatInverseIsTanQuarter) {
  for (int i = 1; i < 1000; ++i) {
    const double t = 2 * pi * i / 1000.0;
    const double expected = std::tan(t / 4);
    EXPECT_NEAR(ghat_inverse(t), expected, 1e-12 * std::max(1.0, expected * expected)) << t;
  }
}

TEST(Charfun, ClosedFormInverseOnLastBranch) {
  EXPECT_NEAR(ghat_inverse_closed(1.5 * pi), kappa_upper_branch, 1e-14);
  for (int i = 1; i < 500; ++i) {
    const double t = 1.5 * pi + 0.5 * pi * i / 500.0;
    const double k = ghat_inverse_closed(t);
    EXPECT_LT(std::abs(ghat(k).value + t), 1e-9);
    EXPECT_NEAR(k, std::tan(t / 4), 1e-10 * k * k);
    EXPECT_NEAR(q_of_ghat_inverse(t), q(k), 1e-12);
  }
}

TEST(Charfun, PhaseArctanBoundedByHalfPi) {
  for (double k : {0.01, 0.3, 0.5, 1.0, 2.0, 3.0, 100.0}) EXPECT_LT(std::abs(phase_arctan(k)), pi / 2);
  EXPECT_EQ(phase_arctan(1.0), 0.0);
}

TEST(Charfun, DomainErrors) {
  EXPECT_THROW(q(-1.0), DomainError);
  EXPECT_THROW(q(std::nan("")), DomainError);
  EXPECT_THROW(f(1.5), DomainError);
  EXPECT_THROW(f(-1.0000001), DomainError);
  EXPECT_THROW(g(1.0, 0.0), DomainError);
  EXPECT_THROW(g(1.0, -2.0), DomainError);
  EXPECT_THROW(psi(-0.1, 1.0), DomainError);
  EXPECT_THROW(g_inverse(-1.0, 1.0), DomainError);
  EXPECT_THROW(ghat_inverse(7.0), DomainError);
  EXPECT_THROW(ghat_inverse_closed(1.0), DomainError);
  EXPECT_THROW(ghat_inverse_closed(2 * pi), DomainError);
}

TEST(Config, DerivedQuantities) {
  const BeamConfig c(2.0, 3.0, 5.0, 0.5);
  EXPECT_NEAR(c.alpha(), std::pow(5.0 / 6.0, 0.25), 1e-15);
  EXPECT_NEAR(c.L(), 2 * std::numbers::sqrt2 * 0.5 * c.alpha(), 1e-15);
  EXPECT_NEAR(BeamConfig::unit().L(), 2 * std::numbers::sqrt2, 1e-15);
  EXPECT_THROW(BeamConfig(0.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(BeamConfig(1.0, 1.0, 1.0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Config, SpectralPointRoundTrip) {
  for (double lambda : {-100.0, -1.0, -1e-3, 1.0001, 2.0, 1e6}) {
    const auto p = SpectralPoint::from_lambda(lambda, 1.0);
    EXPECT_NEAR(SpectralPoint::from_kappa(p.kappa(), 1.0).lambda(), lambda, 1e-9 * std::abs(lambda));
  }
  EXPECT_THROW(SpectralPoint::from_lambda(0.5, 1.0), DomainError);
  EXPECT_THROW(SpectralPoint::from_lambda(0.0, 1.0), DomainError);
  EXPECT_THROW(SpectralPoint::from_lambda(1.0, 1.0), DomainError);
}
