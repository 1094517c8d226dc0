#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "turnarcs/errors.hpp"
#include "turnarcs/multivariate.hpp"

using namespace turnarcs;

namespace {
bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}
}  // namespace

TEST(Bivariate, ExampleOneIsValid) {
  const auto s = BivariateSpec::negative_binomial(0.2, 0.2, 0.7, 0.6);
  EXPECT_TRUE(validate(s).empty());
  MultiCovarianceModel m(s);
  const auto B = m.schoenberg_matrix(0);
  EXPECT_NEAR(B(0, 0), 0.8, 1e-15);
  EXPECT_NEAR(B(0, 1), 0.48, 1e-15);
  EXPECT_NEAR(B(1, 0), 0.48, 1e-15);
  EXPECT_NEAR(B(1, 1), 0.3, 1e-15);
  EXPECT_NEAR(m.schoenberg_matrix(60)(1, 1), 0.3 * std::pow(0.7, 60), 1e-24);
  EXPECT_LT(m.schoenberg_matrix(400).cwiseAbs().maxCoeff(), 1e-60);
}

TEST(Bivariate, CrossConditions) {
  EXPECT_TRUE(has(validate(BivariateSpec::negative_binomial(0.2, 0.2, 0.7, 0.7)),
                  "|ρ| ≤ √((1−δ₁₁)(1−δ₂₂))/(1−δ₁₂)"));
  EXPECT_TRUE(has(validate(BivariateSpec::negative_binomial(0.2, 0.5, 0.7, 0.1)), "δ₁₂ ≤ min(δ₁₁,δ₂₂)"));
  EXPECT_TRUE(has(validate(BivariateSpec::negative_binomial(1.0, 0.2, 0.7, 0.1)), "11: δ ∈ ]0,1["));
}

TEST(Bivariate, SpectralMaternExampleViolatesCrossCondition) {
  auto s = BivariateSpec::spectral_matern(1.0, 2.0, 0.75, 0.75, -0.6);
  EXPECT_TRUE(has(validate(s), "ν₁₂ ≥ (ν₁₁+ν₂₂)/2"));
  // Waiving the sufficient condition exposes an indefinite B_n.
  s.allow_invalid_cross = true;
  const auto v = validate(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("positive semidefinite"), std::string::npos);
  EXPECT_THROW(MultiCovarianceModel{s}, ValidationError);
}

TEST(Bivariate, ZeroCorrelationIsDiagonal) {
  MultiCovarianceModel m(BivariateSpec::negative_binomial(0.2, 0.2, 0.7, 0.0));
  for (int n : {0, 3, 10}) {
    const auto B = m.schoenberg_matrix(n);
    EXPECT_EQ(B(0, 1), 0.0);
    EXPECT_NEAR(B(0, 0), 0.8 * std::pow(0.2, n), 1e-15);
    EXPECT_NEAR(B(1, 1), 0.3 * std::pow(0.7, n), 1e-15);
  }
}

TEST(Bivariate, CrossCovariance) {
  MultiCovarianceModel m(BivariateSpec::negative_binomial(0.2, 0.2, 0.7, 0.6));
  const auto K = m.covariance_eval(0.0);
  EXPECT_NEAR(K(0, 1), 0.6, 1e-14);
  EXPECT_NEAR(K(0, 0), 1.0, 1e-14);
  const auto K1 = m.covariance_eval(1.3);
  EXPECT_NEAR(K1(0, 1), 0.6 * 0.8 / std::sqrt(1 + 0.04 - 0.4 * std::cos(1.3)), 1e-14);
}

TEST(Factor, Identity) {
  const auto f = factor_schoenberg_matrix(Eigen::Matrix2d::Identity());
  EXPECT_TRUE(f.cholesky);
  EXPECT_LT((f.gamma - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-15);
}

TEST(Factor, ExampleOneDegreeZero) {
  Eigen::MatrixXd B(2, 2);
  B << 0.8, 0.48, 0.48, 0.3;
  const auto f = factor_schoenberg_matrix(B);
  EXPECT_NEAR(f.gamma(0, 0), std::sqrt(0.8), 1e-15);
  EXPECT_LT((f.gamma * f.gamma.transpose() - B).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Factor, RankOneFallsBack) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Ones(2, 2);
  const auto f = factor_schoenberg_matrix(B);
  EXPECT_FALSE(f.cholesky);
  EXPECT_LT((f.gamma * f.gamma.transpose() - B).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Factor, IndefiniteThrows) {
  Eigen::MatrixXd B(2, 2);
  B << 1, 2, 2, 1;
  EXPECT_THROW(factor_schoenberg_matrix(B, 4), ModelError);
  EXPECT_NEAR(min_eigenvalue(B), -1.0, 1e-14);
}

TEST(MultiModel, FromMatrices) {
  std::vector<Eigen::MatrixXd> Bs{Eigen::MatrixXd::Identity(3, 3) * 0.5,
                                  Eigen::MatrixXd::Identity(3, 3) * 0.5};
  const auto m = MultiCovarianceModel::from_matrices(2, Bs);
  EXPECT_EQ(m.components(), 3);
  EXPECT_NEAR(m.covariance_eval(0.0)(2, 2), 1.0, 1e-15);
  EXPECT_EQ(m.schoenberg_matrix(5).norm(), 0.0);
  EXPECT_EQ(m.decay().kind, CoefficientDecay::FiniteSupport);
}
