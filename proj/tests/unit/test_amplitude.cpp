#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lcd/amplitude.hpp"
#include "lcd/errors.hpp"
#include "oracles.hpp"

namespace lcd {
namespace {

using test::kPi;

TEST(MakeProfile, GaussianIsUnitNorm) {
  const auto p = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  EXPECT_NEAR(momentum_norm(p), 1.0, 1e-9);
  EXPECT_EQ(p.offset_d(), 0.0);
}

TEST(MakeProfile, ExponentialIsUnitNormAndKeepsOffset) {
  const auto p = make_profile(ExponentialFamily{2.0}, 10.0);
  EXPECT_NEAR(momentum_norm(p), 1.0, 1e-9);
  EXPECT_EQ(p.offset_d(), 10.0);
}

// Closed form of 2 pi \int_0^inf k exp(-(k-5)^2/2) dk, cross-checked by a
// fine Simpson sum; truncation at k_max moves C by < 1e-10 relative.
TEST(MakeProfile, GaussianNormConstMatchesIndependentQuadrature) {
  std::function<double(double)> f = [](double k) { return k * std::exp(-(k - 5) * (k - 5) / 2); };
  const double simpson_c = 1.0 / std::sqrt(2 * kPi * test::simpson(f, 0.0, 60.0, 600000));
  EXPECT_NEAR(simpson_c, test::gaussian_norm_const(5.0, 1.0), 1e-13);
  EXPECT_NEAR(simpson_c, 0.112688628756721, 1e-12);

  const auto p = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  EXPECT_NEAR(p.norm_const(), simpson_c, 1e-10 * simpson_c);
}

TEST(MakeProfile, ExponentialNormConstMatchesClosedForm) {
  const auto p = make_profile(ExponentialFamily{2.0}, 0.0);
  const double c = test::exponential_norm_const(2.0);
  EXPECT_NEAR(p.norm_const(), c, 1e-10 * c);
}

TEST(MakeProfile, KMaxIsFirstGeometricPointBelowTailBound) {
  const auto p = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  const double s = 1.0;
  const double total = test::gaussian_first_moment(5.0, s);
  const double tail = test::gaussian_first_moment_tail(5.0, s, p.k_max()) / total;
  const double tail_before = test::gaussian_first_moment_tail(5.0, s, p.k_max() / 1.01) / total;
  EXPECT_LT(tail, kTailMassBound);
  EXPECT_GE(tail_before, kTailMassBound);
  EXPECT_NEAR(tail_mass(p), tail, 1e-3 * kTailMassBound);
  EXPECT_NEAR(p.k_max(), 11.57076092, 1e-7);
}

TEST(MakeProfile, ExponentialTailBelowBound) {
  const auto p = make_profile(ExponentialFamily{2.0}, 0.0);
  EXPECT_LT(tail_mass(p), kTailMassBound);
  EXPECT_NEAR(p.k_max(), 31.79595746, 1e-7);
}

TEST(MakeProfile, RejectsInvalidParameters) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(make_profile(GaussianFamily{5.0, 0.0}, 0.0), InvalidParameter);
  EXPECT_THROW(make_profile(GaussianFamily{-1.0, 1.0}, 0.0), InvalidParameter);
  EXPECT_THROW(make_profile(GaussianFamily{5.0, nan}, 0.0), InvalidParameter);
  EXPECT_THROW(make_profile(ExponentialFamily{-2.0}, 0.0), InvalidParameter);
  EXPECT_THROW(make_profile(ExponentialFamily{0.0}, 0.0), InvalidParameter);
  EXPECT_THROW(make_profile(GaussianFamily{5.0, 1.0}, -1.0), InvalidParameter);
  EXPECT_THROW(make_profile(GaussianFamily{5.0, 1.0}, nan), InvalidParameter);
}

TEST(MomentumNorm, DoubledConstantGivesFour) {
  const auto p = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  EXPECT_NEAR(momentum_norm(p.scaled(2.0)), 4.0, 1e-8);
}

TEST(MomentumNorm, UnnormalizedGaussianMatchesClosedForm) {
  const auto raw = make_raw_profile(GaussianFamily{5.0, 1.0}, 0.0, 1.0);
  const double expected = 2 * kPi * test::gaussian_first_moment(5.0, 1.0);
  EXPECT_NEAR(momentum_norm(raw), expected, 2e-10 * expected);
  EXPECT_NEAR(expected, 78.7480505706, 1e-9);
}

TEST(MomentumNormProperty, EveryConstructedProfileIsNormalized) {
  test::Gen gen(20261015);
  for (int i = 0; i < 40; ++i) {
    const FamilyParams fam = i % 2 ? FamilyParams{ExponentialFamily{gen.uniform(0.1, 20.0)}}
                                   : FamilyParams{GaussianFamily{gen.uniform(0.05, 20.0),
                                                                 gen.uniform(0.05, 5.0)}};
    const auto p = make_profile(fam, gen.uniform(0.0, 50.0));
    EXPECT_NEAR(momentum_norm(p), 1.0, 1e-9) << family_name(fam) << " case " << i;
    EXPECT_LT(tail_mass(p), kTailMassBound);
  }
}

TEST(MomentumNormProperty, ScalesQuadratically) {
  test::Gen gen(7);
  const auto p = make_profile(ExponentialFamily{3.0}, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double lambda = gen.uniform(-5.0, 5.0);
    EXPECT_NEAR(momentum_norm(p.scaled(lambda)), lambda * lambda, 1e-9 * (1 + lambda * lambda));
  }
}

TEST(Profile, EvaluatesFamilyShape) {
  const auto g = make_profile(GaussianFamily{5.0, 1.0}, 0.0);
  EXPECT_DOUBLE_EQ(g(5.0), g.norm_const());
  EXPECT_DOUBLE_EQ(g(7.0), g.norm_const() * std::exp(-1.0));
  EXPECT_EQ(g(0.0), 0.0);
  EXPECT_EQ(g(-1.0), 0.0);

  const auto e = make_profile(ExponentialFamily{2.0}, 0.0);
  EXPECT_DOUBLE_EQ(e(2.0), e.norm_const() * 2.0 * std::exp(-1.0));
}

TEST(Profile, LengthScales) {
  EXPECT_DOUBLE_EQ(make_profile(GaussianFamily{5.0, 2.0}, 0.0).length_scale(), 0.5);
  EXPECT_DOUBLE_EQ(make_profile(ExponentialFamily{2.0}, 0.0).length_scale(), 2.0);
}

TEST(Helicity, ChannelOverlapIsKroneckerDelta) {
  using H = HelicityChannel;
  EXPECT_EQ(channel_overlap(H::Plus, H::Plus), 1.0);
  EXPECT_EQ(channel_overlap(H::Plus, H::Minus), 0.0);
  EXPECT_EQ(channel_overlap(H::Minus, H::Plus), 0.0);
  EXPECT_EQ(channel_overlap(H::Minus, H::Minus), 1.0);
  static_assert(channel_overlap(H::Plus, H::Minus) == channel_overlap(H::Minus, H::Plus));
}

TEST(Helicity, StateIndexMapsToChannel) {
  EXPECT_EQ(channel_of_state(0), HelicityChannel::Plus);
  EXPECT_EQ(channel_of_state(1), HelicityChannel::Minus);
}

} // namespace
} // namespace lcd
