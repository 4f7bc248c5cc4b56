#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "relaybound/concentration.hpp"
#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {
namespace {

ConcentrationParams params(int n, double noise_var, double a_n, double r) {
  return {n, noise_var, a_n, r};
}

TEST(ConcentrationParams, Validation) {
  EXPECT_THROW(params(0, 1, 0.1, 1).validate(), DomainError);
  EXPECT_THROW(params(1, 0, 0.1, 1).validate(), DomainError);
  EXPECT_THROW(params(1, 1, -0.1, 1).validate(), DomainError);
  EXPECT_THROW(params(1, 1, 0.1, 0).validate(), DomainError);
  EXPECT_THROW(params(2000, 1, 0.6, 1).validate(), DomainError);
  EXPECT_NO_THROW(params(1000, 1, 1.0, 1).validate());
}

TEST(HalfspaceCheck, FullMeasureSet) {
  const ConcentrationCheck c = halfspace_check(params(1, 1, 0, 1));
  EXPECT_EQ(c.base_prob, 1.0);
  EXPECT_EQ(c.blowup_prob, 1.0);
  EXPECT_NEAR(c.floor, 1.0 - std::pow(2.0, -0.5), 1e-15);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.verdict, Verdict::pass);
}

void expect_matches(const oracle::HalfspaceOracle& o) {
  const ConcentrationParams p = params(o.n, o.noise_var, o.a_n, o.r);
  const Halfspace h = halfspace_for(p);
  EXPECT_NEAR(h.threshold, o.tau, 1e-9);
  EXPECT_NEAR(p.blowup_radius(), o.radius, 1e-12);
  const ConcentrationCheck c = halfspace_check(p);
  EXPECT_NEAR(c.base_prob, std::pow(2.0, -o.n * o.a_n), 1e-9 * c.base_prob);
  EXPECT_NEAR(c.blowup_prob, o.blowup, 1e-10);
  EXPECT_NEAR(c.floor, o.floor, 1e-14);
  EXPECT_TRUE(c.holds);
}

TEST(HalfspaceCheck, FrozenExamples) {
  expect_matches(oracle::kHalfspaceA);
  expect_matches(oracle::kHalfspaceB);
  EXPECT_NEAR(params(25, 4, 0.2, 0.5).floor(), 1.0 - std::pow(2.0, -25 * 0.25 / 8), 1e-15);
}

TEST(HalfspaceCheck, HoldsOnParameterGrid) {
  int evaluated = 0;
  for (int n : {1, 10, 100, 1000}) {
    for (double nv : {0.25, 1.0, 4.0, 16.0}) {
      for (double a : {0.0, 0.05, 0.1, 0.5, 1.0}) {
        for (double r : {0.1, 0.3, 1.0, 3.0}) {
          const ConcentrationParams p = params(n, nv, a, r);
          if (n * a > 1000) continue;
          const ConcentrationCheck c = halfspace_check(p);
          EXPECT_TRUE(c.holds) << n << " " << nv << " " << a << " " << r;
          ++evaluated;
        }
      }
    }
  }
  EXPECT_EQ(evaluated, 320);
}

TEST(HalfspaceCheck, UnderflowGuard) {
  EXPECT_THROW((void)halfspace_check(params(1001, 1, 1.0, 1)), DomainError);
}

TEST(HalfspaceCheck, BlowupNondecreasingInR) {
  for (int n : {1, 10, 100}) {
    double prev = 0.0;
    for (double r = 0.01; r < 3.0; r += 0.01) {
      const double p = halfspace_check(params(n, 2.0, 0.1, r)).blowup_prob;
      EXPECT_GE(p, prev);
      prev = p;
    }
  }
}

TEST(ExactCheck, ScalingEquivariance) {
  for (double nv : {0.25, 4.0, 16.0}) {
    const ConcentrationParams p = params(10, nv, 0.1, 0.3);
    ConcentrationParams unit = p;
    unit.noise_var = 1.0;
    // Shrinking the set by sqrt(N) turns N(0, N I) into N(0, I); the
    // radius terms shrink by the same factor.
    unit.r = p.r / std::sqrt(nv);

    const SetDescriptor h = halfspace_for(p);
    const ConcentrationCheck a = exact_check(p, h);
    const ConcentrationCheck b = exact_check(unit, scaled(h, 1.0 / std::sqrt(nv)));
    EXPECT_NEAR(a.base_prob, b.base_prob, 1e-12);
    EXPECT_NEAR(a.blowup_prob, b.blowup_prob, 1e-12);

    const SetDescriptor ball = centered_ball_for(p);
    const ConcentrationCheck c = exact_check(p, ball);
    const ConcentrationCheck d = exact_check(unit, scaled(ball, 1.0 / std::sqrt(nv)));
    EXPECT_NEAR(c.base_prob, d.base_prob, 1e-12);
    EXPECT_NEAR(c.blowup_prob, d.blowup_prob, 1e-12);
  }
}

TEST(Sets, CenteredBallRadiusFromChiSquareQuantile) {
  const Ball b = centered_ball_for(params(20, 1, 0.15, 1));
  EXPECT_NEAR(b.radius, oracle::kBallRadius20, 1e-10);
  EXPECT_NEAR(b.radius * b.radius, oracle::kChiSquare20Quantile, 1e-9);
  const ConcentrationCheck c = exact_check(params(20, 1, 0.15, 1), b);
  EXPECT_NEAR(c.base_prob, 0.125, 1e-12);
  EXPECT_TRUE(c.holds);
}

TEST(Sets, DistanceFunctions) {
  const std::vector<double> pt = {3.0, 4.0};
  EXPECT_EQ(distance_to_set(Halfspace{0, 1.0}, pt), 2.0);
  EXPECT_EQ(distance_to_set(Halfspace{1, 5.0}, pt), 0.0);
  EXPECT_EQ(distance_to_set(Ball{{0.0, 0.0}, 2.0}, pt), 3.0);
  EXPECT_EQ(distance_to_set(Ball{{0.0, 0.0}, 6.0}, pt), 0.0);
  const UnionOfBalls u{{Ball{{0.0, 0.0}, 1.0}, Ball{{3.0, 5.0}, 0.5}}};
  EXPECT_EQ(distance_to_set(u, pt), 0.5);
  EXPECT_EQ(set_kind(u), "union_of_balls");
  EXPECT_EQ(set_kind(Halfspace{}), "halfspace");
  EXPECT_EQ(set_kind(Ball{}), "ball");
}

TEST(Sets, Errors) {
  EXPECT_THROW((void)exact_check(params(2, 1, 0.1, 1), UnionOfBalls{{Ball{{0, 0}, 1}}}), DomainError);
  EXPECT_THROW((void)exact_check(params(3, 1, 0.1, 1), Ball{{0, 0}, 1}), DomainError);
  EXPECT_THROW((void)exact_check(params(3, 1, 0.1, 1), Halfspace{5, 0.0}), DomainError);
  EXPECT_THROW((void)exact_check(params(3, 1, 1.0, 1), Ball{{0, 0, 0}, 0.1}), PreconditionError);
}

TEST(MonteCarlo, AgreesWithExactHalfspace) {
  const ConcentrationParams p = params(10, 1, 0.2, 0.1);
  const ConcentrationCheck exact = halfspace_check(p);
  const std::uint64_t m = 100'000;
  const ConcentrationCheck mc = monte_carlo_check(p, halfspace_for(p), m, 42);
  const double se = std::sqrt(exact.blowup_prob * exact.blowup_complement / m);
  EXPECT_LE(std::abs(mc.blowup_prob - exact.blowup_prob), 3.0 * se);
  EXPECT_EQ(mc.method, Method::monte_carlo);
  EXPECT_EQ(mc.samples, m);
  EXPECT_EQ(mc.seed, 42u);
}

TEST(MonteCarlo, ReproducibleForSeed) {
  const ConcentrationParams p = params(5, 2, 0.3, 0.2);
  const auto a = monte_carlo_check(p, halfspace_for(p), 20'000, 9);
  const auto b = monte_carlo_check(p, halfspace_for(p), 20'000, 9);
  const auto c = monte_carlo_check(p, halfspace_for(p), 20'000, 10);
  EXPECT_EQ(a.blowup_prob, b.blowup_prob);
  EXPECT_EQ(a.base_prob, b.base_prob);
  EXPECT_NE(a.base_prob, c.base_prob);
}

TEST(MonteCarlo, StandardErrorHalvesWhenSamplesQuadruple) {
  const ConcentrationParams p = params(4, 1, 0.25, 0.05);
  const auto small = monte_carlo_check(p, halfspace_for(p), 25'000, 1);
  const auto large = monte_carlo_check(p, halfspace_for(p), 100'000, 1);
  EXPECT_NEAR(large.blowup_stderr / small.blowup_stderr, 0.5, 0.05);
}

TEST(MonteCarlo, BallAtOrigin) {
  const ConcentrationParams p = params(20, 1, 0.15, 1);
  const auto c = monte_carlo_check(p, centered_ball_for(p), 100'000, 7);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.verdict, Verdict::pass);
  EXPECT_NEAR(c.base_prob, 0.125, 3.0 * c.base_stderr + 1e-12);
}

TEST(MonteCarlo, LargeRadiusCoversEverything) {
  const ConcentrationParams p = params(10, 1, 0.1, 5);
  EXPECT_NEAR(p.floor(), 1.0, 1e-30);
  const auto c = monte_carlo_check(p, halfspace_for(p), 10'000, 3);
  EXPECT_EQ(c.blowup_prob, 1.0);
  EXPECT_TRUE(c.holds);
}

TEST(MonteCarlo, UnionOfBalls) {
  const ConcentrationParams p = params(2, 1, 0.5, 0.5);
  const UnionOfBalls u{{Ball{{1.0, 0.0}, 1.0}, Ball{{-1.0, 0.0}, 1.0}}};
  const auto c = monte_carlo_check(p, u, 50'000, 5);
  EXPECT_EQ(c.verdict, Verdict::pass);
}

TEST(MonteCarlo, PreconditionAndSampleCount) {
  const ConcentrationParams p = params(3, 1, 0.1, 1);
  EXPECT_THROW((void)monte_carlo_check(p, halfspace_for(p), 999, 1), DomainError);
  EXPECT_THROW((void)monte_carlo_check(p, Ball{{0, 0, 0}, 0.05}, 10'000, 1), PreconditionError);
}

TEST(MonteCarlo, VerdictGuardBand) {
  EXPECT_EQ(classify_estimate(0.95, 0.01, 0.90), Verdict::pass);
  EXPECT_EQ(classify_estimate(0.95, 0.01, 0.95), Verdict::inconclusive);
  EXPECT_EQ(classify_estimate(0.95, 0.01, 0.97), Verdict::inconclusive);
  EXPECT_EQ(classify_estimate(0.95, 0.01, 0.99), Verdict::fail);
  EXPECT_EQ(classify_estimate(1.0, 0.0, 1.0), Verdict::pass);
  EXPECT_EQ(to_string(Verdict::inconclusive), "INCONCLUSIVE");
}

}  // namespace
}  // namespace relaybound
