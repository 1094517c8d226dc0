#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "turnarcs/diagnostics.hpp"
#include "turnarcs/gegenbauer.hpp"

using namespace turnarcs;

TEST(Mu3, ReferenceValues) {
  EXPECT_NEAR(mu3_gegenbauer(0, 2), 1.0, 1e-12);
  EXPECT_NEAR(mu3_gegenbauer(0, 3), 1.0, 1e-12);
  EXPECT_NEAR(mu3_gegenbauer(1, 2), 0.25, 1e-10);
  EXPECT_NEAR(mu3_gegenbauer(2, 2) / 0.1231257450502, 1, 1e-9);
  EXPECT_NEAR(mu3_gegenbauer(3, 3) / 1.72805422055775, 1, 1e-9);
  EXPECT_NEAR(mu3_gegenbauer(5, 3) / 1.94627083277788, 1, 1e-9);
  EXPECT_NEAR(mu3_gegenbauer(5, 4) / 27.2774091935, 1, 1e-9);
  EXPECT_NEAR(mu3_gegenbauer(4, 5) / 110.7508516, 1, 1e-8);
  EXPECT_NEAR(mu3_gegenbauer(10, 2) / 0.0155375160019, 1, 1e-9);
}

TEST(Mu3, TableAgreesWithAdaptive) {
  const auto t = mu3_gegenbauer_table(64, 3);
  for (int n : {0, 7, 10, 33, 64}) EXPECT_NEAR(t[n] / mu3_gegenbauer(n, 3), 1.0, 1e-8);
}

TEST(Mu3, DimensionTwoDecay) {
  // (2 / (n pi))^{3/2} times the integral of sin^{-1/2} over [0, pi/2].
  const double c = std::pow(2 / std::numbers::pi, 1.5) * std::sqrt(std::numbers::pi) * std::tgamma(0.25) /
                   (2 * std::tgamma(0.75));
  const double ref[] = {0.426030009723821714, 0.511974858626471832, 0.544205030681870689};
  int i = 0;
  for (int n : {4, 16, 64}) {
    const double scaled = std::pow(n, 1.5) * mu3_gegenbauer(n, 2);
    EXPECT_NEAR(scaled / ref[i++], 1.0, 1e-8);
    EXPECT_LE(scaled, c);
  }
}

TEST(Mu3, DimensionThreeGrowth) {
  double prev = 0.0;
  for (int n : {8, 32, 128, 512}) {
    const double v = mu3_gegenbauer(n, 3) / std::log(n);
    if (prev > 0) {
      EXPECT_LE(v, prev * 1.05);
    }
    prev = v;
  }
}

TEST(Mu3, JensenFloor) {
  for (int d : {2, 3, 5}) {
    for (int n : {1, 4, 9}) {
      // E g^2 = ||G_n||^2 / ||G_0||^2.
      const double m2 = gegenbauer_norm_sq(d, n) / gegenbauer_norm_sq(d, 0);
      EXPECT_GE(mu3_gegenbauer(n, d), std::pow(m2, 1.5) * (1 - 1e-10));
    }
  }
}

TEST(Mu3Wave, SingleDegree) {
  CovarianceModel m(CovarianceSpec::finite({0.0, 0.0, 1.0}, 3));
  const auto r = mu3_wave(m, DegreeDistribution::finite({0.0, 0.0, 1.0}));
  EXPECT_NEAR(r.value, std::pow(2.0, -1.5) * std::pow(6.0, 1.5) * mu3_gegenbauer(2, 3), 1e-9);
}

TEST(Mu3Wave, NegativeBinomialGeometric) {
  CovarianceModel m(CovarianceSpec::negative_binomial(0.5));
  const auto law = DegreeDistribution::geometric(0.01);
  const auto a = mu3_wave(m, law);
  EXPECT_FALSE(a.divergent);
  EXPECT_NEAR(a.value / 6.1328037000119036, 1.0, 1e-9);
  const auto b = mu3_wave(m, law, 2 * a.terms);
  EXPECT_LT(std::fabs(b.value - a.value) / a.value, 1e-4);
}

TEST(Mu3Wave, ChentsovHighDimensionDiverges) {
  CovarianceModel m(CovarianceSpec::chentsov(8));
  EXPECT_TRUE(mu3_wave(m, DegreeDistribution::odd_shifted_zeta(2)).divergent);
}

TEST(BerryEsseen, Bound) {
  EXPECT_NEAR(berry_esseen_bound(1.0, 1.0, 1500), 0.4748 / std::sqrt(1500.0), 1e-15);
  EXPECT_NEAR(berry_esseen_bound(8.0, 2.0, 1), 0.4748, 1e-15);
  EXPECT_NEAR(berry_esseen_bound(27 * 1.7, 3.0, 40), berry_esseen_bound(1.7, 1.0, 40), 1e-15);
}

TEST(Ks, NormalSamples) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  std::vector<double> x(100000);
  for (auto& v : x) v = 2.0 * nd(gen);
  EXPECT_LT(ks_normality(x, 2.0), 1.36 / std::sqrt(1e5));
}

TEST(Ks, ConstantSamples) {
  std::vector<double> x(200, 0.3);
  EXPECT_GE(ks_normality(x, 1.0), 0.5);
}

TEST(Duplication, Cases) {
  RandomStream rng(1, 2);
  const std::vector<double> x1{0, 0, 1};
  const std::vector<double> x2{std::sqrt(0.75), 0, 0.5};
  auto r = duplication_check(0, 0, 2, x1, x2, 1000, rng);
  EXPECT_DOUBLE_EQ(r.mean, 1.0);
  EXPECT_DOUBLE_EQ(r.expected, 1.0);
  r = duplication_check(1, 0, 2, x1, x2, 200000, rng);
  EXPECT_EQ(r.expected, 0.0);
  EXPECT_LT(std::fabs(r.mean), 4 * r.standard_error);
  r = duplication_check(1, 1, 2, x1, x2, 200000, rng);
  EXPECT_NEAR(r.expected, 0.5 / 3, 1e-15);
  EXPECT_LT(std::fabs(r.mean - r.expected), 4 * r.standard_error);
}

TEST(EmpiricalCovariance, ConstantField) {
  CovarianceModel m(CovarianceSpec::finite({1.0}, 2));
  RandomStream rng(4, 4);
  PointSet pts(2);
  for (int i = 0; i < 20; ++i) pts.push_back(sample_pole(2, rng));
  std::vector<Realization> rs;
  for (int k = 0; k < 200; ++k) {
    rs.push_back(simulate(SimulationConfig(m, DegreeDistribution::finite({1.0}), 5, k), pts));
  }
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) pairs.push_back({i, j});
  const auto est = empirical_covariance(rs, pairs, 5);
  for (std::size_t b = 0; b < est.bins(); ++b) {
    if (est.empty(b)) continue;
    EXPECT_LT(std::fabs(est.estimate[b][0] - 1.0), 4 * est.standard_error[b][0]);
  }
}

TEST(EmpiricalCovariance, ExampleOneCrossCovariance) {
  MultiCovarianceModel m(BivariateSpec::negative_binomial(0.2, 0.2, 0.7, 0.6));
  PointSet pts(2);
  pts.push_back(SpherePoint::axis(2, 0));
  std::vector<Realization> rs;
  for (int k = 0; k < 200; ++k) {
    rs.push_back(simulate(SimulationConfig(m, DegreeDistribution::geometric(0.01), 500, 50 + k), pts));
  }
  const PointPair pp{0, 0};
  const auto est = empirical_covariance(rs, std::span(&pp, 1), 4);
  EXPECT_EQ(est.p, 2);
  EXPECT_LT(std::fabs(est.estimate[0][1] - 0.6), 4 * est.standard_error[0][1]);
  EXPECT_LT(std::fabs(est.estimate[0][0] - 1.0), 4 * est.standard_error[0][0]);
}
