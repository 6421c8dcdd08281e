#include <gtest/gtest.h>

#include <cmath>

#include "polycm/cm_checker.hpp"

using polycm::CMTarget;
using polycm::Extended;
using polycm::ShiftPair;
using polycm::Verdict;

namespace {
using P = ShiftPair<double>;
}

TEST(AlternatingSigns, SubPairPasses) {
  const auto c = polycm::check_alternating_signs(CMTarget::Theta, P(0, 0.5), 0.1, 30.0, 6, 200);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_EQ(c.expected_sign, 1);
  EXPECT_EQ(c.worst_margin.size(), 7u);
  EXPECT_EQ(c.grid_points, 200);
}

TEST(AlternatingSigns, SuperPairPassesWithNegativeSign) {
  const auto c = polycm::check_alternating_signs(CMTarget::Theta, P(0, 2), 0.1, 30.0, 6, 200);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_EQ(c.expected_sign, -1);
}

TEST(AlternatingSigns, DeltaZeroPairPositive) {
  const auto c = polycm::check_alternating_signs(CMTarget::Delta, P(0, 0), 0.1, 30.0, 0, 200);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_GT(c.worst_margin[0], 0);
}

TEST(AlternatingSigns, CriticalPairIsIndeterminate) {
  const auto c = polycm::check_alternating_signs(CMTarget::Theta, P(0, 1), 0.1, 30.0, 4, 50);
  EXPECT_EQ(c.verdict, Verdict::Indeterminate);
  EXPECT_EQ(c.expected_sign, 0);
}

TEST(AlternatingSigns, JustPastCriticalBand) {
  const auto c = polycm::check_alternating_signs(CMTarget::Theta, P(0, 1.02), 0.1, 30.0, 3, 40);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_EQ(c.expected_sign, -1);
}

TEST(AlternatingSigns, DomainAndOrderErrors) {
  EXPECT_THROW(polycm::check_alternating_signs(CMTarget::Theta, P(0.2, 0.5), -0.3, 30.0, 2, 10), polycm::DomainError);
  EXPECT_THROW(polycm::check_alternating_signs(CMTarget::Theta, P(0, 0.5), 0.1, 30.0, 40, 10), polycm::OrderError);
}

TEST(AlternatingSigns, RefinementStability) {
  for (auto pair : {P(0, 0.5), P(-0.4, 0.3), P(0, 2), P(1, 3.5)}) {
    const double lo = -pair.alpha() + 0.1;
    const auto base = polycm::check_alternating_signs(CMTarget::Theta, pair, lo, 50.0, 6, 100);
    ASSERT_EQ(base.verdict, Verdict::Pass);
    const auto fine = polycm::check_alternating_signs(CMTarget::Theta, pair, lo, 50.0, 5, 200);
    EXPECT_EQ(fine.verdict, Verdict::Pass);
  }
}

TEST(AlternatingSigns, StrictMarginsInExtendedMode) {
  const ShiftPair<Extended> pair(Extended(0), Extended("0.5"));
  const auto c = polycm::check_alternating_signs(CMTarget::Theta, pair, Extended("0.1"), Extended(50), 6, 60);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_TRUE(c.strictly_positive);
  for (double m : c.worst_margin) EXPECT_GT(m, 0);
}

TEST(GeometricGrid, Shape) {
  const auto g = polycm::geometric_grid(0.1, 50.0, 200, 0.0);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g.back(), 50.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_LT(g[1] - g[0], g[199] - g[198]);
}

TEST(FiniteDifference, ConstantHasNoDerivative) {
  const auto f = [](double) { return 3.25; };
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(polycm::finite_difference_oracle(f, 1.0, k, 1e-3), 0.0);
  EXPECT_THROW(polycm::finite_difference_oracle(f, 1.0, 5, 1e-3), std::invalid_argument);
}

TEST(FiniteDifference, MatchesThetaDerivatives) {
  polycm::Sampler rng(3);
  const double h = 1e-3;
  for (int i = 0; i < 40; ++i) {
    const P pair(rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5));
    if (pair.coincident() || pair.regime() == polycm::Regime::Critical) continue;
    const double x = -pair.alpha() + rng.uniform(0.5, 15);
    const auto f = [&](double u) { return polycm::theta(pair, u); };
    for (int k = 1; k <= 3; ++k) {
      const double fd = polycm::finite_difference_oracle(f, x, k, h);
      EXPECT_NEAR(fd, polycm::theta_derivative(pair, x, k), std::max(1e-5, 1e3 * h * h)) << k;
    }
  }
}

TEST(StepIdentities, SubPair) {
  const auto r = polycm::check_step_identities(P(0.3, 0.8), 100);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_LT(r.lambda_residual, 1e-10);
  EXPECT_LT(r.theta_residual, 1e-10);
  EXPECT_LT(r.decay, 1e-5);
}

TEST(StepIdentities, UnitGapResidualVanishes) {
  const auto r = polycm::check_step_identities(P(0, 1), 50);
  EXPECT_LT(r.lambda_residual, 1e-15);
}

TEST(StepIdentities, CoincidentPairRejected) {
  EXPECT_THROW(polycm::check_step_identities(P(1, 1), 10), polycm::DomainError);
}

TEST(StepIdentities, SecondDerivativeDecays) {
  EXPECT_LT(std::abs(polycm::theta_derivative(P(0, 0.5), 1e6, 2)), 1e-5);
}

TEST(ConjectureProbe, NoViolationFound) {
  for (auto pair : {P(0, 0.5), P(0, 2)}) {
    const auto c = polycm::probe_phi_lcm_conjecture(pair, -pair.alpha() + 0.1, 30.0, 3, 60);
    EXPECT_TRUE(c.advisory);
    EXPECT_EQ(c.violations, 0);
    EXPECT_NE(c.verdict, Verdict::Fail);
  }
  EXPECT_THROW(polycm::probe_phi_lcm_conjecture(P(0, 0.5), 0.1, 30.0, 5, 10), polycm::OrderError);
}

TEST(Sampler, Deterministic) {
  polycm::Sampler a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(0, 1), b.uniform(0, 1));
  polycm::Sampler c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform(2, 3);
    EXPECT_GE(u, 2);
    EXPECT_LT(u, 3);
  }
}
