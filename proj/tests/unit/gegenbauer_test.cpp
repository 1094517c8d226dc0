#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "turnarcs/errors.hpp"
#include "turnarcs/gegenbauer.hpp"

using namespace turnarcs;

TEST(Gegenbauer, LowDegrees) {
  EXPECT_DOUBLE_EQ(gegenbauer_eval({0.5, 0}, 0.7), 1.0);
  EXPECT_DOUBLE_EQ(gegenbauer_eval({0.5, 1}, 0.3), 0.3);
  EXPECT_NEAR(gegenbauer_eval({0.5, 2}, 1.0), 1.0, 1e-15);
}

TEST(Gegenbauer, ChebyshevSecondKind) {
  const double phi = 0.4;
  EXPECT_NEAR(gegenbauer_eval({1.0, 3}, std::cos(phi)), std::sin(4 * phi) / std::sin(phi), 1e-14);
  for (int n = 0; n < 200; n += 17) {
    EXPECT_NEAR(gegenbauer_eval({1.0, n}, std::cos(phi)), std::sin((n + 1) * phi) / std::sin(phi),
                1e-11 * (n + 1));
  }
}

TEST(Gegenbauer, LegendreMatchesStd) {
  for (int n = 0; n < 60; ++n) {
    for (double r : {-0.9, -0.2, 0.0, 0.35, 0.99}) {
      EXPECT_NEAR(gegenbauer_eval({0.5, n}, r), std::legendre(n, r), 1e-13);
    }
  }
}

TEST(Gegenbauer, TableSeeds) {
  auto t = gegenbauer_eval_table(0.5, 1, 0.3);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t[0], 1.0);
  EXPECT_DOUBLE_EQ(t[1], 0.3);
  t = gegenbauer_eval_table(1.5, 2, 0.0);
  EXPECT_DOUBLE_EQ(t[0], 1.0);
  EXPECT_DOUBLE_EQ(t[1], 0.0);
  EXPECT_DOUBLE_EQ(t[2], -1.5);
}

TEST(Gegenbauer, TableIsBitIdenticalToSingle) {
  const auto t = gegenbauer_eval_table(2.5, 80, 0.123);
  for (int n = 0; n <= 80; ++n) EXPECT_EQ(t[n], gegenbauer_eval({2.5, n}, 0.123));
}

TEST(Gegenbauer, ValueAtOne) {
  EXPECT_NEAR(gegenbauer_at_one(0.5, 5), 1.0, 1e-14);
  EXPECT_NEAR(gegenbauer_at_one(1.0, 7), 8.0, 1e-13);
  EXPECT_DOUBLE_EQ(gegenbauer_at_one(2.0, 0), 1.0);
  for (int n = 0; n < 40; ++n) {
    EXPECT_NEAR(gegenbauer_eval({1.5, n}, 1.0) / gegenbauer_at_one(1.5, n), 1.0, 1e-12);
  }
}

TEST(Gegenbauer, NormSquared) {
  EXPECT_NEAR(gegenbauer_norm_sq(2, 0), 2.0, 1e-14);
  EXPECT_NEAR(gegenbauer_norm_sq(2, 3), 2.0 / 7.0, 1e-14);
  EXPECT_NEAR(gegenbauer_norm_sq(1, 2), std::numbers::pi / 2, 1e-14);
  EXPECT_THROW(gegenbauer_norm_sq(1, 0), DomainError);
}

TEST(Gegenbauer, GeneratingFunction) {
  const double t = 0.3;
  for (double lambda : {0.5, 1.0, 2.5}) {
    for (double r : {-1.0, -0.4, 0.2, 1.0}) {
      const auto g = gegenbauer_eval_table(lambda, 60, r);
      double sum = 0.0, tn = 1.0;
      for (double v : g) {
        sum += v * tn;
        tn *= t;
      }
      EXPECT_NEAR(sum, std::pow(1 - 2 * r * t + t * t, -lambda), 1e-10);
    }
  }
}

TEST(Gegenbauer, RejectsBadArguments) {
  EXPECT_THROW(gegenbauer_eval({0.5, 2}, 1.5), DomainError);
  EXPECT_THROW(gegenbauer_eval({0.0, 2}, 0.5), DomainError);
  EXPECT_THROW(gegenbauer_eval({0.5, -1}, 0.5), DomainError);
}

TEST(NormalizedGegenbauer, MatchesRatio) {
  NormalizedGegenbauer g(1.5);
  for (int n : {0, 1, 5, 30}) {
    for (double r : {-0.8, 0.1, 0.95}) {
      EXPECT_NEAR(g.value(n, r), gegenbauer_eval({1.5, n}, r) / gegenbauer_at_one(1.5, n), 1e-12);
    }
  }
}

TEST(NormalizedGegenbauer, StaysBoundedAtHighOrder) {
  // G_n^lambda(1) overflows here but the normalized value must not.
  NormalizedGegenbauer g(127.5);
  std::vector<double> out(3001);
  g.table(3000, 0.3, out);
  for (double v : out) {
    ASSERT_TRUE(std::isfinite(v));
    ASSERT_LE(std::fabs(v), 1.0 + 1e-12);
  }
  EXPECT_NEAR(g.value(3000, 1.0), 1.0, 1e-12);
}
