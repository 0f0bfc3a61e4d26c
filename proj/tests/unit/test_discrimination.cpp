#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lcd/discrimination.hpp"
#include "lcd/errors.hpp"
#include "oracles.hpp"

namespace lcd {
namespace {

const MomentumProfile &centred() {
  static const auto p = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  return p;
}

const MomentumProfile &offset10() {
  static const auto p = make_profile(GaussianFamily{5.0, 1.0}, 10.0);
  return p;
}

TEST(Priors, ComplementAndValidation) {
  const Priors p(0.3);
  EXPECT_EQ(p.pi0() + p.pi1(), 1.0);
  EXPECT_THROW(Priors(1.5), InvalidParameter);
  EXPECT_THROW(Priors(-0.1), InvalidParameter);
  EXPECT_THROW(Priors(std::nan("")), InvalidParameter);
  EXPECT_NO_THROW(Priors(0.0));
  EXPECT_NO_THROW(Priors(1.0));
}

TEST(Posteriors, EqualPriors) {
  EXPECT_EQ(posteriors_on_unknown(Priors(0.5)), std::make_pair(0.5, 0.5));
  EXPECT_EQ(posteriors_on_unknown(Priors(1.0)), std::make_pair(1.0, 0.0));
  const auto [a, b] = posteriors_on_unknown(Priors(0.3));
  EXPECT_NEAR(a, 0.3, 1e-12);
  EXPECT_NEAR(b, 0.7, 1e-12);
}

TEST(InaccessibleError, Examples) {
  EXPECT_NEAR(inaccessible_error(Priors(0.5), 1.0), 0.5, 1e-15);
  EXPECT_NEAR(inaccessible_error(Priors(0.3), 0.5), 0.21, 1e-15);
  EXPECT_EQ(inaccessible_error(Priors(0.3), 0.0), 0.0);
  EXPECT_THROW(inaccessible_error(Priors(0.3), 1.5), InvalidParameter);
  EXPECT_THROW(inaccessible_error(Priors(0.3), -0.1), InvalidParameter);
}

TEST(AccessibleError, IsZero) {
  static_assert(accessible_error() == 0.0);
  EXPECT_EQ(total_error(Priors(0.5), 0.4), inaccessible_error(Priors(0.5), 0.4));
}

TEST(TotalError, Examples) {
  EXPECT_NEAR(total_error(Priors(0.5), 1.0), 0.5, 1e-15);
  EXPECT_EQ(total_error(Priors(0.5), 0.0), 0.0);
}

TEST(TotalErrorProperty, DecompositionSymmetryAndMaximum) {
  test::Gen gen(5);
  for (int i = 0; i < 500; ++i) {
    const double pi0 = gen.uniform(0.0, 1.0), p_t = gen.uniform(0.0, 1.0);
    const Priors pr(pi0);
    const double e = total_error(pr, p_t);
    EXPECT_EQ(e, inaccessible_error(pr, p_t) + accessible_error());
    EXPECT_NEAR(e, 2 * pi0 * (1 - pi0) * p_t, 1e-12);
    EXPECT_NEAR(e, total_error(Priors(1 - pi0), p_t), 1e-12);
    EXPECT_LE(e, total_error(Priors(0.5), p_t) + 1e-15);
  }
  EXPECT_NEAR(total_error(Priors(0.5), 0.37), 0.37 / 2, 1e-15);
}

TEST(MapStrategy, UsesSmallerPrior) {
  EXPECT_NEAR(unknown_outcome_error(Priors(0.3), 0.4, GuessStrategy::Map), 0.3 * 0.4, 1e-15);
  EXPECT_NEAR(unknown_outcome_error(Priors(0.5), 0.4, GuessStrategy::Map), 0.2, 1e-15);
  EXPECT_EQ(unknown_outcome_error(Priors(0.3), 0.4, GuessStrategy::ProbabilityMatching),
            total_error(Priors(0.3), 0.4));
  EXPECT_EQ(strategy_name(GuessStrategy::Map), "map");
  EXPECT_EQ(strategy_name(GuessStrategy::ProbabilityMatching), "paper");
}

TEST(OutsideProbability, LimitsAndRange) {
  EXPECT_EQ(outside_probability(centred(), 0.0, 3.0), 1.0);
  EXPECT_LE(outside_probability(centred(), 15.0, 0.0), 1e-6);
  for (const double R : {0.5, 2.0, 6.0}) {
    const double p = outside_probability(offset10(), R, 8.0);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

// p_t from the 3D oracle instead of the radial reduction.
TEST(OutsideProbability, StandardInstanceAgainstOracle) {
  const double p_t = outside_probability(centred(), 2.0, 0.0);
  const double p_oracle = 1.0 - oracle_inside_probability_3d(centred(), 2.0, 0.0, 96);
  EXPECT_NEAR(p_t, p_oracle, 2e-6);
  EXPECT_NEAR(total_error(Priors(0.5), p_t), 0.5 * p_oracle, 1e-6);
}

TEST(OptimalTime, CentredPacketMeasuresImmediately) {
  const auto opt = optimal_measurement_time(centred(), 2.0, {0.0, 20.0}, 21);
  EXPECT_EQ(opt.t_star, 0.0);
  double prev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double p = outside_probability(centred(), 2.0, i);
    EXPECT_GE(p, prev - 1e-9) << "t=" << i;
    prev = p;
  }
  ASSERT_EQ(opt.warnings.size(), 1u); // minimum at the window start
}

TEST(OptimalTime, OffsetPacketPeaksWhenShellReachesBall) {
  const auto opt = optimal_measurement_time(offset10(), 2.0, {0.0, 20.0}, 41);
  EXPECT_NEAR(opt.t_star, 10.0, 0.5);
  EXPECT_TRUE(opt.warnings.empty());
  // Brute force at 10x the refined grid resolution around the optimum.
  double best_t = 0.0, best_p = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = 8.0 + 4.0 * i / 100;
    const double p = outside_probability(offset10(), 2.0, t);
    if (p < best_p) {
      best_p = p;
      best_t = t;
    }
  }
  EXPECT_LE(opt.p_t_star, best_p + 1e-12);
  EXPECT_NEAR(opt.t_star, best_t, 0.04);
  EXPECT_NEAR(opt.t_star, 9.83756551759, 2e-4);
}

TEST(OptimalTime, DegenerateWindowStaysInside) {
  const TimeWindow w{5.0, 5.0 + 1e-6};
  const auto opt = optimal_measurement_time(offset10(), 2.0, w, 8);
  EXPECT_GE(opt.t_star, w.lo);
  EXPECT_LE(opt.t_star, w.hi);
}

TEST(OptimalTime, TiesResolveToEarliestTime) {
  const auto opt = optimal_measurement_time(centred(), 0.0, {3.0, 9.0}, 8);
  EXPECT_EQ(opt.t_star, 3.0);
  EXPECT_EQ(opt.p_t_star, 1.0);
  EXPECT_TRUE(opt.warnings.empty()); // flat, so no boundary warning
}

TEST(OptimalTime, RejectsBadWindowOrGrid) {
  EXPECT_THROW(optimal_measurement_time(centred(), 1.0, {2.0, 2.0}, 8), InvalidParameter);
  EXPECT_THROW(optimal_measurement_time(centred(), 1.0, {0.0, 1.0}, 7), InvalidParameter);
}

TEST(TradeoffCurve, ZeroRadius) {
  const std::vector<double> radii{0.0};
  for (const double pi0 : {0.5, 0.3, 1.0}) {
    const auto rep = tradeoff_curve(centred(), Priors(pi0), radii, {0.0, 20.0}, 8);
    ASSERT_EQ(rep.size(), 1u);
    EXPECT_NEAR(rep[0].P_e, 2 * pi0 * (1 - pi0), 1e-12);
    EXPECT_EQ(rep[0].scan_T, 0.0);
  }
}

TEST(TradeoffCurve, AllMassReachable) {
  const std::vector<double> radii{1.0, 4.0, 20.0};
  const auto rep = tradeoff_curve(centred(), Priors(0.5), radii, {0.0, 20.0}, 8);
  EXPECT_LE(rep.back().P_e, 1e-6 * 0.5);
}

TEST(TradeoffCurve, OffsetPacketStrictlyDecreasingAndReportInvariants) {
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  const Priors pr(0.5);
  const auto rep = tradeoff_curve(offset10(), pr, radii, {0.0, 20.0}, 8);
  ASSERT_EQ(rep.size(), radii.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    EXPECT_EQ(rep[i].R, radii[i]);
    EXPECT_NEAR(rep[i].P_e, 2 * pr.pi0() * pr.pi1() * rep[i].p_t, 1e-12);
    EXPECT_NEAR(rep[i].posterior0, pr.pi0(), 1e-12);
    EXPECT_NEAR(rep[i].posterior1, pr.pi1(), 1e-12);
    EXPECT_EQ(rep[i].scan_T, rep[i].R);
    EXPECT_EQ(rep[i].total_T, rep[i].t_meas + rep[i].scan_T);
    if (i) EXPECT_LT(rep[i].P_e, rep[i - 1].P_e);
  }
}

TEST(FixedTimeCurve, NonIncreasingInRadius) {
  const std::vector<double> radii{0.0, 1.0, 3.0, 6.0, 9.0, 12.0};
  const auto rep = fixed_time_curve(offset10(), Priors(0.4), radii, 6.0);
  for (std::size_t i = 1; i < rep.size(); ++i) {
    EXPECT_LE(rep[i].P_e, rep[i - 1].P_e + 1e-9);
    EXPECT_EQ(rep[i].t_meas, 6.0);
  }
}

TEST(Curves, RejectInvalidRadiusLists) {
  const std::vector<double> empty, repeated{1.0, 1.0}, negative{-1.0};
  EXPECT_THROW(tradeoff_curve(centred(), Priors(0.5), empty, {}, 8), InvalidParameter);
  EXPECT_THROW(tradeoff_curve(centred(), Priors(0.5), repeated, {}, 8), InvalidParameter);
  EXPECT_THROW(fixed_time_curve(centred(), Priors(0.5), negative, 0.0), InvalidParameter);
}

} // namespace
} // namespace lcd
