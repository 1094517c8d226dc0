#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "turnarcs/degree_distribution.hpp"
#include "turnarcs/errors.hpp"

using namespace turnarcs;

TEST(DegreeLaw, Pmf) {
  const auto z = DegreeDistribution::shifted_zeta(2.0);
  EXPECT_NEAR(z.pmf(0), 6.0 / (std::numbers::pi * std::numbers::pi), 1e-15);
  EXPECT_NEAR(z.pmf(3), z.pmf(0) / 16.0, 1e-16);
  EXPECT_DOUBLE_EQ(DegreeDistribution::geometric(0.01).pmf(0), 0.01);
  const auto o = DegreeDistribution::odd_shifted_zeta(2.0);
  EXPECT_EQ(o.pmf(4), 0.0);
  EXPECT_FALSE(o.in_support(4));
  EXPECT_NEAR(o.pmf(1), z.pmf(0), 1e-16);
  EXPECT_NEAR(o.pmf(5), z.pmf(2), 1e-16);
}

TEST(DegreeLaw, TailsSumToOne) {
  for (const auto& law : {DegreeDistribution::shifted_zeta(2.0), DegreeDistribution::shifted_zeta(1.3),
                          DegreeDistribution::geometric(0.2), DegreeDistribution::odd_shifted_zeta(2.5)}) {
    for (std::int64_t k : {0, 5, 63, 64, 200}) {
      double head = 0.0;
      for (std::int64_t n = 0; n <= k; ++n) head += law.pmf(n);
      EXPECT_NEAR(head + law.tail(k), 1.0, 1e-12) << law.describe() << " k=" << k;
    }
  }
}

TEST(DegreeLaw, DegenerateFinite) {
  const auto f = DegreeDistribution::finite({1.0});
  RandomStream rng(1, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(f.sample(rng), 0);
}

TEST(DegreeLaw, FiniteNormalizes) {
  const auto f = DegreeDistribution::finite({1.0, 0.0, 3.0});
  EXPECT_DOUBLE_EQ(f.pmf(0), 0.25);
  EXPECT_FALSE(f.in_support(1));
  EXPECT_EQ(f.pmf(7), 0.0);
  EXPECT_THROW(DegreeDistribution::finite({0.0}), DomainError);
  EXPECT_THROW(DegreeDistribution::finite({1.0, -1.0}), DomainError);
}

TEST(DegreeLaw, ParseRoundTrip) {
  for (std::string s : {"geometric:0.01", "zeta:2", "oddzeta:2.5", "finite:0.25,0.75"}) {
    const auto law = DegreeDistribution::parse(s);
    EXPECT_EQ(DegreeDistribution::parse(law.describe()).describe(), law.describe());
  }
  EXPECT_THROW(DegreeDistribution::parse("zeta:1"), DomainError);
  EXPECT_THROW(DegreeDistribution::parse("poisson:2"), ParseError);
}

TEST(DegreeLaw, GeometricMean) {
  const auto g = DegreeDistribution::geometric(0.01);
  RandomStream rng(2024, 7);
  const int n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(g.sample(rng));
    s += k;
    s2 += k * k;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_LT(std::fabs(mean - 99.0), 3 * se);
}

TEST(DegreeLaw, OddZetaDrawsOddDegrees) {
  const auto o = DegreeDistribution::odd_shifted_zeta(2.0);
  RandomStream rng(5, 5);
  for (int i = 0; i < 10000; ++i) EXPECT_EQ(o.sample(rng) % 2, 1);
}
