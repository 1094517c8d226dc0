#include <gtest/gtest.h>

#include "turnarcs/recommend.hpp"

using namespace turnarcs;

TEST(Recommend, SpectralMatern) {
  const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::spectral_matern(1.0, 0.75)));
  EXPECT_EQ(r.case_number, 3);
  EXPECT_DOUBLE_EQ(r.theta_prime_max, 5.5);
  EXPECT_EQ(r.distribution.kind(), DegreeKind::ShiftedZeta);
  EXPECT_DOUBLE_EQ(r.distribution.parameter(), 2.0);
  EXPECT_TRUE(r.tag.empty());
}

TEST(Recommend, NegativeBinomial) {
  const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::negative_binomial(0.5)));
  EXPECT_EQ(r.case_number, 2);
  EXPECT_EQ(r.distribution.kind(), DegreeKind::Geometric);
  EXPECT_GE(1.0 - r.distribution.parameter(), 0.125);
}

TEST(Recommend, GeneralizedF) {
  const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::generalized_f(1, 3.5, 2, 3)));
  EXPECT_EQ(r.case_number, 3);
  EXPECT_DOUBLE_EQ(r.theta_prime_max, 8.5);
}

TEST(Recommend, ChentsovHighDimensionIsFlagged) {
  for (int d : {8, 16, 256}) {
    const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::chentsov(d)));
    EXPECT_TRUE(r.interval_empty) << d;
    EXPECT_EQ(r.tag, kBoundNotGuaranteed);
    EXPECT_EQ(r.distribution.kind(), DegreeKind::OddShiftedZeta);
  }
  const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::chentsov(2)));
  EXPECT_FALSE(r.interval_empty);
}

TEST(Recommend, FiniteSupport) {
  const auto r = recommend_distribution(CovarianceModel(CovarianceSpec::finite({0.5, 0.5}, 3)));
  EXPECT_EQ(r.case_number, 1);
  // Weights b_n G_n(1): 0.5 and 0.5 * 2.
  EXPECT_NEAR(r.distribution.pmf(1), 2.0 / 3.0, 1e-15);
}

TEST(Recommend, ThetaPrimeMax) {
  EXPECT_DOUBLE_EQ(theta_prime_max(2.5, 2), 5.5);
  EXPECT_DOUBLE_EQ(theta_prime_max(4.5, 3), 8.5);
  EXPECT_DOUBLE_EQ(theta_prime_max(8.0, 8), 1.0);
  EXPECT_DOUBLE_EQ(theta_prime_max(5.0, 4), 4.0);
}

TEST(SupportCovers, Cases) {
  CovarianceModel nb(CovarianceSpec::negative_binomial(0.5));
  EXPECT_FALSE(support_covers(DegreeDistribution::shifted_zeta(2), nb, 100));
  EXPECT_EQ(support_covers(DegreeDistribution::odd_shifted_zeta(2), nb, 100), 0);
  CovarianceModel ch(CovarianceSpec::chentsov(2));
  EXPECT_FALSE(support_covers(DegreeDistribution::odd_shifted_zeta(2), ch, 100));
}
