#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "oracles.hpp"
#include "relaybound/bounds.hpp"
#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {
namespace {

const ExtReal kInf = ExtReal::infinity();

ChannelParams channel(double s1, double s2, double r0) { return {ExtReal(s1), ExtReal(s2), r0}; }

double value(const BoundResult& r) { return r.value.value(); }

// Right-hand side of the named constraint at a, from the brute-force formulas.
double constraint_rhs(const ChannelParams& p, Constraint c, double a) {
  const double s1 = p.snr1.value(), s2 = p.snr2.value();
  switch (c) {
    case Constraint::broadcast: return brute::half_log2_1p(s1 + s2);
    case Constraint::multiple_access: return brute::half_log2_1p(s2) + p.r0 - a;
    case Constraint::relay_tradeoff: return brute::half_log2_1p(std::max(s1, s2)) + brute::tradeoff(a);
    case Constraint::relay_tradeoff_snr1: return brute::half_log2_1p(s1) + brute::tradeoff(a);
    case Constraint::relay_tradeoff_scaled:
      return brute::half_log2_1p(s1) + brute::scaled_tradeoff(a, s2 / s1);
  }
  return NAN;
}

TEST(ChannelParams, Validation) {
  EXPECT_THROW(channel(1, 1, -0.1).validate(), DomainError);
  EXPECT_THROW(channel(1, 1, INFINITY).validate(), DomainError);
  EXPECT_THROW((ChannelParams{kInf, kInf, 0.5, 0.0}.validate()), DomainError);
  EXPECT_NO_THROW((ChannelParams{kInf, kInf, 0.5, 0.5}.validate()));
}

TEST(CutsetBound, Examples) {
  const BoundResult a = cutset_bound(channel(1, 1, 10));
  EXPECT_NEAR(value(a), 0.5 * std::log2(3.0), 1e-15);
  EXPECT_EQ(a.active_constraint, Constraint::broadcast);
  EXPECT_EQ(a.a_star, 0.0);

  const BoundResult z = cutset_bound(channel(0, 0, 1));
  EXPECT_EQ(value(z), 0.0);
  EXPECT_EQ(z.active_constraint, Constraint::broadcast);

  EXPECT_EQ(cutset_bound({kInf, kInf, 0.5}).value, kInf);
}

TEST(CutsetBound, TieReportsMultipleAccess) {
  // 1/2 log2(1 + 3 + 0) = 1 = 1/2 log2(1 + 0) + 1.
  const BoundResult r = cutset_bound(channel(3, 0, 1));
  EXPECT_DOUBLE_EQ(value(r), 1.0);
  EXPECT_EQ(r.active_constraint, Constraint::multiple_access);
}

TEST(SolveAstar, ClosedFormValues) {
  EXPECT_EQ(solve_astar(0.0), 0.0);
  EXPECT_NEAR(solve_astar(0.5), oracle::kAstarK05, 1e-14);
  EXPECT_NEAR(solve_astar(1.0), oracle::kAstarK1, 1e-14);
  EXPECT_NEAR(solve_astar(2.5), oracle::kAstarK25, 1e-14);
  EXPECT_THROW((void)solve_astar(-1e-3), DomainError);
  EXPECT_THROW((void)solve_astar(INFINITY), DomainError);
}

TEST(SolveAstar, MatchesBisectionOnGrid) {
  for (int i = 0; i <= 1000; ++i) {
    const double k = 10.0 * i / 1000.0;
    auto f = [k](double a) { return 2.0 * a + std::sqrt(2.0 * a * kLn2) * kLog2E - k; };
    EXPECT_NEAR(solve_astar(k), bisect(f, 0.0, k), 1e-10) << k;
  }
}

TEST(TightenedBound, ReducesToCutsetAtZeroRate) {
  for (double s : {0.0, 0.01, 1.0, 7.0, 1e4}) {
    for (double s2 : {0.0, 0.5 * s, s, 2.0 * s}) {
      const ChannelParams p = channel(s, s2, 0.0);
      EXPECT_EQ(value(tightened_bound(p)), value(cutset_bound(p))) << s << "," << s2;
      EXPECT_EQ(tightened_bound(p).a_star, 0.0);
    }
  }
}

TEST(TightenedBound, FrozenExample) {
  const BoundResult r = tightened_bound(channel(1, 1, 0.25));
  EXPECT_NEAR(value(r), oracle::kTightened_1_1_025, 1e-12);
  EXPECT_NEAR(r.a_star, oracle::kTightenedAstar_1_1_025, 1e-12);
  EXPECT_EQ(r.active_constraint, Constraint::multiple_access);
  EXPECT_NEAR(value(r), brute::max_min(1, 1, 0.25, false, 1'000'000), 1e-6);
}

TEST(TightenedBound, InfiniteChannelValueIsInfinite) {
  const BoundResult r = tightened_bound({kInf, kInf, 0.5});
  EXPECT_EQ(r.value, kInf);
  EXPECT_NEAR(r.a_star, oracle::kAstarK05, 1e-14);
}

TEST(SharpenedBound, EqualsTightenedOnDiagonal) {
  for (double s : {0.1, 1.0, 10.0, 1e3}) {
    for (double r0 : {0.0, 0.1, 0.5, 2.0}) {
      const ChannelParams p = channel(s, s, r0);
      EXPECT_EQ(value(sharpened_bound(p)), value(tightened_bound(p))) << s << "," << r0;
    }
  }
}

TEST(SharpenedBound, FrozenExample) {
  const ChannelParams p = channel(4, 1, 0.5);
  const BoundResult r = sharpened_bound(p);
  EXPECT_NEAR(value(r), 1.0, 1e-12);
  EXPECT_EQ(r.a_star, 0.0);
  EXPECT_EQ(r.active_constraint, Constraint::multiple_access);
  EXPECT_NEAR(value(r), brute::max_min(4, 1, 0.5, true, 1'000'000), 1e-6);

  const auto cs = ConstraintSet::build(p, BoundKind::sharpened);
  EXPECT_NEAR(cs.c1().value(), oracle::kBroadcast_4_1, 1e-14);
  EXPECT_NEAR(cs.c2_at(0.0), 1.0, 1e-14);
  EXPECT_NEAR(cs.c3_at(0.0).value(), oracle::kRelayTradeoff_4_1_at0, 1e-14);
  EXPECT_NEAR(cs.c5_at(0.0)->value(), oracle::kScaledTradeoff_4_1_at0, 1e-14);
}

TEST(SharpenedBound, ZeroRateMatchesCutset) {
  const ChannelParams p = channel(4, 1, 0.0);
  EXPECT_NEAR(value(sharpened_bound(p)), 0.5, 1e-15);
  EXPECT_EQ(value(sharpened_bound(p)), value(cutset_bound(p)));
  EXPECT_NEAR(value(sharpened_bound(p)), brute::max_min(4, 1, 0.0, true, 1), 1e-15);
}

TEST(SharpenedBound, Preconditions) {
  EXPECT_THROW((void)sharpened_bound(channel(1, 4, 0.5)), PreconditionError);
  EXPECT_THROW((void)sharpened_bound({kInf, kInf, 0.5}), IndeterminateLimitError);
  EXPECT_THROW((void)sharpened_bound({ExtReal(1.0), kInf, 0.5}), PreconditionError);
  EXPECT_NO_THROW((void)sharpened_bound({kInf, kInf, 0.5, 0.5}));
  EXPECT_NO_THROW((void)sharpened_bound({kInf, ExtReal(1.0), 0.5}));
}

TEST(ConstraintSet, MonotoneInA) {
  for (const auto& p : {channel(1, 1, 1), channel(40, 3, 2), channel(0.01, 0.001, 0.5)}) {
    const auto cs = ConstraintSet::build(p, BoundKind::sharpened);
    for (int i = 0; i < 200; ++i) {
      const double a = p.r0 * i / 200.0, b = p.r0 * (i + 1) / 200.0;
      EXPECT_GT(cs.c2_at(a), cs.c2_at(b));
      EXPECT_LT(cs.c3_at(a), cs.c3_at(b));
      EXPECT_LT(*cs.c5_at(a), *cs.c5_at(b));
    }
  }
}

TEST(ConstraintSet, InfiniteSnrOffsets) {
  // snr1 = snr2 = inf along rho = 0.5: offsets relative to 1/2 log2(snr2).
  const auto cs = ConstraintSet::build({kInf, kInf, 0.7, 0.5}, BoundKind::sharpened);
  EXPECT_EQ(cs.base(), kInf);
  EXPECT_NEAR(cs.c1().value(), 0.5 * std::log2(3.0), 1e-15);
  EXPECT_NEAR(cs.c2_at(0.2), 0.5, 1e-15);
  EXPECT_NEAR(cs.c3_at(0.0).value(), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cs.rho(), 0.5);
}

TEST(BoundProperties, DominanceAndActiveConstraintConsistency) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.0, 5.0);
  for (int trial = 0; trial < 3000; ++trial) {
    double s1 = brute::log_uniform(rng, 1e-3, 1e3), s2 = brute::log_uniform(rng, 1e-3, 1e3);
    const ChannelParams p = channel(s1, s2, rate(rng));
    const BoundResult c = cutset_bound(p), t = tightened_bound(p);
    EXPECT_LE(value(t), value(c) + 1e-9);
    EXPECT_GE(t.a_star, 0.0);
    EXPECT_LE(t.a_star, p.r0);
    EXPECT_NEAR(constraint_rhs(p, t.active_constraint, t.a_star), value(t), 1e-9);
    if (s1 >= s2) {
      const BoundResult s = sharpened_bound(p);
      EXPECT_LE(value(s), value(t) + 1e-9);
      EXPECT_NEAR(constraint_rhs(p, s.active_constraint, s.a_star), value(s), 1e-9);
    }
  }
}

TEST(BoundProperties, MatchesBruteForceMaxMin) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    double s1 = brute::log_uniform(rng, 1e-2, 1e3), s2 = brute::log_uniform(rng, 1e-2, 1e3);
    if (s1 < s2) std::swap(s1, s2);
    const ChannelParams p = channel(s1, s2, rate(rng));
    EXPECT_NEAR(value(tightened_bound(p)), brute::max_min(s1, s2, p.r0, false, 200'000), 1e-5);
    EXPECT_NEAR(value(sharpened_bound(p)), brute::max_min(s1, s2, p.r0, true, 200'000), 1e-5);
  }
}

TEST(BoundProperties, NondecreasingInEachArgument) {
  const std::vector<double> snrs = {0.0, 0.01, 0.1, 0.5, 1, 2, 5, 10, 50, 100, 1e3, 1e4};
  const std::vector<double> rates = {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 1, 2, 5};
  for (BoundKind kind : {BoundKind::cutset, BoundKind::tightened, BoundKind::sharpened}) {
    for (double s1 : snrs) {
      for (double s2 : snrs) {
        if (kind == BoundKind::sharpened && s1 < s2) continue;
        for (std::size_t k = 0; k + 1 < rates.size(); ++k) {
          EXPECT_LE(value(evaluate_bound(channel(s1, s2, rates[k]), kind)),
                    value(evaluate_bound(channel(s1, s2, rates[k + 1]), kind)) + 1e-12);
        }
      }
    }
    for (double r0 : rates) {
      for (std::size_t i = 0; i + 1 < snrs.size(); ++i) {
        for (double other : snrs) {
          // Increase snr1 with snr2 fixed.
          if (kind != BoundKind::sharpened || snrs[i] >= other) {
            EXPECT_LE(value(evaluate_bound(channel(snrs[i], other, r0), kind)),
                      value(evaluate_bound(channel(snrs[i + 1], other, r0), kind)) + 1e-12)
                << to_string(kind) << " snr1 " << snrs[i] << " snr2 " << other << " r0 " << r0;
          }
          // Increase snr2 with snr1 fixed.
          if (kind != BoundKind::sharpened || other >= snrs[i + 1]) {
            EXPECT_LE(value(evaluate_bound(channel(other, snrs[i], r0), kind)),
                      value(evaluate_bound(channel(other, snrs[i + 1], r0), kind)) + 1e-12)
                << to_string(kind) << " snr1 " << other << " snr2 " << snrs[i] << " r0 " << r0;
          }
        }
      }
    }
  }
}

TEST(BoundKind, Names) {
  EXPECT_EQ(to_string(BoundKind::cutset), "cutset");
  EXPECT_EQ(to_string(BoundKind::tightened), "theorem1");
  EXPECT_EQ(to_string(BoundKind::sharpened), "prop5");
}

}  // namespace
}  // namespace relaybound
