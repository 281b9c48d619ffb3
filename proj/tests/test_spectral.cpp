#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "beamk/errors.hpp"
#include "beamk/spectral.hpp"
#include "fixtures.hpp"
#include "jacobi.hpp"

using namespace beamk;
using namespace beamk::spectral;

namespace {

const Spectrum& unit_spectrum() {
  static const Spectrum s = analyze(BeamConfig::unit(), 400);
  return s;
}

}  // namespace

TEST(Kernel, PointValues) {
  const auto c = BeamConfig::unit();
  EXPECT_NEAR(kernel_K(0.0, c), std::numbers::sqrt2 / 4, 1e-16);
  EXPECT_NEAR(kernel_K(3 * std::numbers::pi / (2 * std::numbers::sqrt2), c), 0.0, 1e-16);
  EXPECT_NEAR(kernel_K(1.0, c), fixtures::kernel_at_1, 1e-16);
  EXPECT_THROW(kernel_K(-1e-12, c), DomainError);
}

TEST(Kernel, Envelope) {
  const BeamConfig c(2.0, 0.5, 3.0, 1.0);
  for (int i = 0; i <= 1000; ++i) {
    const double y = 0.02 * i;
    const double env = c.alpha() / (2 * c.k()) * std::exp(-c.alpha() * y / std::numbers::sqrt2);
    EXPECT_LE(std::abs(kernel_K(y, c)), env * (1 + 1e-15));
  }
}

TEST(Discretize, SmallMatrixIsSymmetric) {
  const auto m = discretize(BeamConfig::unit(), 4);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_LT(m.symmetry_defect(), 1e-15);
  EXPECT_THROW(discretize(BeamConfig::unit(), 3), DomainError);
}

TEST(Discretize, GridInvariants) {
  for (auto rule : {QuadratureRule::gauss_legendre, QuadratureRule::composite_simpson}) {
    const auto m = discretize(BeamConfig(1, 1, 1, 2.5), 101, rule);
    EXPECT_EQ(m.symmetry_defect(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      sum += m.grid.weights[i];
      EXPECT_GE(m.grid.nodes[i], -2.5);
      EXPECT_LE(m.grid.nodes[i], 2.5);
      if (i > 0) EXPECT_GT(m.grid.nodes[i], m.grid.nodes[i - 1]);
    }
    EXPECT_NEAR(sum, 5.0, 5.0 * 1e-12);
  }
}

TEST(Discretize, VanishingDomain) {
  const auto m = discretize(BeamConfig(1, 1, 1, 1e-9), 16);
  EXPECT_LT(m.entries.cwiseAbs().maxCoeff(), 1e-9);
  const auto s = eigen_spectrum(m);
  EXPECT_LT(std::abs(s.eigenvalues.front()), 1e-9);
}

TEST(EigenSpectrum, DiagonalMatrix) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
  const std::vector<double> diag = {0.3, -1.0, 2.5, 0.0, 1.25};
  for (int i = 0; i < 5; ++i) d(i, i) = diag[static_cast<std::size_t>(i)];
  const auto s = eigen_spectrum(d);
  const std::vector<double> want = {2.5, 1.25, 0.3, 0.0, -1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.eigenvalues[i], want[i]);
}

TEST(EigenSpectrum, TwoByTwo) {
  Eigen::MatrixXd m(2, 2);
  m << 0.7, 0.2, 0.2, 0.7;
  const auto s = eigen_spectrum(m);
  EXPECT_NEAR(s.eigenvalues[0], 0.9, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 0.5, 1e-15);
  EXPECT_EQ(s.parity[0], Parity::even);
  EXPECT_EQ(s.parity[1], Parity::odd);
}

TEST(EigenSpectrum, AgreesWithJacobiOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + 4 * trial;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
    const auto s = eigen_spectrum(a);
    const auto ref = jacobi_eigenvalues(a);
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], ref[i], 1e-11);
    EXPECT_LT(s.residual_bound, 1e-12);
  }
}

TEST(EigenSpectrum, AgreesWithJacobiOnKernelMatrix) {
  const auto m = discretize(BeamConfig::unit(), 60);
  const auto s = eigen_spectrum(m);
  const auto ref = jacobi_eigenvalues(m.entries);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], ref[i], 1e-13);
}

TEST(EigenSpectrum, RejectsBadInput) {
  EXPECT_THROW(eigen_spectrum(Eigen::MatrixXd(2, 3)), DomainError);
  EXPECT_THROW(eigen_spectrum(Eigen::MatrixXd::Identity(2, 2), 0.0), DomainError);
}

TEST(Spectrum, TopEigenvalueMatchesHighResolutionOracle) {
  const auto& s = unit_spectrum();
  EXPECT_NEAR(s.eigenvalues.front(), fixtures::lambda1_n2000, 1e-9 * fixtures::lambda1_n2000);
  const auto coarse = eigen_spectrum(discretize(BeamConfig::unit(), 200));
  EXPECT_NEAR(coarse.eigenvalues.front(), s.eigenvalues.front(), 1e-8 * s.eigenvalues.front());
}

TEST(Spectrum, QuadratureConvergesForBothRules) {
  const auto c = BeamConfig::unit();
  double prev_gap = 1.0;
  for (int n : {41, 81, 161}) {
    const double lo = eigen_spectrum(discretize(c, n, QuadratureRule::composite_simpson)).eigenvalues.front();
    const double gap = std::abs(lo - fixtures::lambda1_n2000);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-6);
}

TEST(Spectrum, PositiveSemidefiniteAndSorted) {
  const auto& s = unit_spectrum();
  EXPECT_GT(s.eigenvalues.back(), -1e-12);
  for (std::size_t i = 1; i < s.n(); ++i) EXPECT_GE(s.eigenvalues[i - 1], s.eigenvalues[i]);
}

TEST(Spectrum, ReliableEigenvaluesStrictlySeparatedAndParityAlternates) {
  const auto& s = unit_spectrum();
  const auto reliable = s.reliable_count();
  EXPECT_GE(reliable, 60u);
  EXPECT_GT(min_gap(s, reliable), 1e-12);
  EXPECT_TRUE(parity_alternates(s, 8));
  EXPECT_EQ(s.parity.front(), Parity::even);
}

TEST(Confinement, UnitConfig) {
  const auto v = verify_confinement(unit_spectrum(), BeamConfig::unit());
  EXPECT_TRUE(v.confined);
  EXPECT_TRUE(v.violations.empty());
}

TEST(Confinement, StiffFoundation) {
  for (auto [k, ref] : {std::pair{10.0, fixtures::lambda_max_k10}, std::pair{100.0, fixtures::lambda_max_k100}}) {
    const BeamConfig c(1, 1, k, 1);
    const auto s = analyze(c, 400);
    EXPECT_NEAR(s.eigenvalues.front(), ref, 1e-9 * ref);
    EXPECT_LT(s.eigenvalues.front(), 1.0 / k);
    EXPECT_TRUE(verify_confinement(s, c).confined);
  }
}

TEST(Confinement, PlantedEigenvalueIsReported) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(6, 6);
  d(0, 0) = 0.5;
  d(1, 1) = 1.5;
  d(2, 2) = 0.1;
  const auto v = verify_confinement(eigen_spectrum(d), BeamConfig::unit());
  EXPECT_FALSE(v.confined);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].index, 0u);
  EXPECT_DOUBLE_EQ(v.violations[0].eigenvalue, 1.5);
}

// lambda_1 approaches 1/k as L = 2 sqrt2 l alpha grows, so the sweep checks the
// strict bound (margin_floor = 0, discretization error still subtracted).
// Configurations with L > 100 need more nodes than a dense solve affords.
TEST(Confinement, ParameterSweep) {
  const double values[] = {0.01, 1.0, 100.0};
  int tested = 0;
  for (double E : values)
    for (double I : values)
      for (double k : values)
        for (double l : values) {
          const BeamConfig c(E, I, k, l);
          if (c.L() > 100.0) continue;
          const int n = c.L() > 30.0 ? 1200 : 400;
          const auto s = analyze(c, n);
          const auto v = verify_confinement(s, c, 1e-10 / k, 0.0);
          EXPECT_TRUE(v.confined) << "E=" << E << " I=" << I << " k=" << k << " l=" << l << " L=" << c.L()
                                  << " lambda1*k=" << s.eigenvalues.front() * k;
          ++tested;
        }
  EXPECT_GE(tested, 60);
}

TEST(CharacteristicResidual, PositiveOutsideSpectrumInterval) {
  const auto c = BeamConfig::unit();
  EXPECT_NEAR(characteristic_residual(-1.0, c), fixtures::char_residual_minus1, 1e-12);
  EXPECT_NEAR(characteristic_residual(1.0001, c), fixtures::char_residual_1_0001, 1e-12);
  for (double lambda : {-1e6, -10.0, -0.01, 1.000001, 1.5, 10.0, 1e8}) {
    EXPECT_GT(characteristic_residual(lambda, c), 0.0) << lambda;
  }
  EXPECT_THROW(characteristic_residual(0.0, c), DomainError);
  EXPECT_THROW(characteristic_residual(0.7, c), DomainError);
  EXPECT_THROW(characteristic_residual(1.0, c), DomainError);
}

TEST(CharacteristicResidual, ConsistentWithResolvent) {
  // No computed eigenvalue sits near a lambda where the residual is positive.
  const auto& s = unit_spectrum();
  for (double lambda : {-1.0, -0.1, 1.01, 1.5, 3.0}) {
    ASSERT_GT(characteristic_residual(lambda, BeamConfig::unit()), 0.0);
    double dist = INFINITY;
    for (double e : s.eigenvalues) dist = std::min(dist, std::abs(e - lambda));
    EXPECT_GT(dist, 5e-3) << lambda;
  }
}

TEST(DecayFit, ExactPowerLaw) {
  std::vector<double> seq(100);
  for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = std::pow(static_cast<double>(i + 1), -4.0);
  const auto fit = decay_fit(seq, 4, 12);
  EXPECT_NEAR(fit.slope, -4.0, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_NEAR(decay_fit(seq, 2, 100).slope, -4.0, 1e-12);
}

TEST(DecayFit, DegenerateWindows) {
  std::vector<double> seq = {1.0, 0.5, 0.25, 0.125};
  EXPECT_THROW(decay_fit(seq, 3, 3), DomainError);
  EXPECT_THROW(decay_fit(seq, 3, 2), DomainError);
  EXPECT_THROW(decay_fit(seq, 2, 5), InsufficientEigenvaluesError);
}

TEST(DecayFit, KernelSpectrum) {
  const auto& s = unit_spectrum();
  const auto fit = decay_fit(s);
  EXPECT_NEAR(fit.slope, fixtures::slope_20_60, 1e-6);
  EXPECT_GE(fit.slope, -4.5);
  EXPECT_LE(fit.slope, -3.5);
  // The first eigenvalues are still pre-asymptotic.
  EXPECT_NEAR(decay_fit(s, 4, 12).slope, fixtures::slope_4_12, 1e-6);
  EXPECT_THROW(decay_fit(s, 20, s.reliable_count() + 1), InsufficientEigenvaluesError);
}
