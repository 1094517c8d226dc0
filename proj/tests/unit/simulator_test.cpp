#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "turnarcs/diagnostics.hpp"
#include "turnarcs/errors.hpp"
#include "turnarcs/simulator.hpp"

using namespace turnarcs;

namespace {

PointSet random_points(int d, int n, std::uint64_t seed) {
  RandomStream rng(seed, 99);
  PointSet pts(d);
  for (int i = 0; i < n; ++i) pts.push_back(sample_pole(d, rng));
  return pts;
}

}  // namespace

TEST(Sphere, Geodesic) {
  const auto e1 = SpherePoint::axis(2, 0);
  const auto e2 = SpherePoint::axis(2, 1);
  const SpherePoint m1({-1.0, 0.0, 0.0});
  EXPECT_EQ(geodesic(e1, e1), 0.0);
  EXPECT_NEAR(geodesic(e1, m1), std::numbers::pi, 1e-15);
  EXPECT_NEAR(geodesic(e1, e2), std::numbers::pi / 2, 1e-15);
  EXPECT_THROW(SpherePoint({1.0, 1.0, 0.0}), DomainError);
}

TEST(Sphere, UniformPoles) {
  RandomStream rng(11, 0);
  const int n = 100000;
  double m[3] = {0, 0, 0}, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto w = sample_pole(2, rng);
    for (int k = 0; k < 3; ++k) m[k] += w[k];
    s2 += w[0] * w[0];
    s4 += w[0] * w[0] * w[0] * w[0];
  }
  for (double v : m) EXPECT_LT(std::fabs(v / n), 3 * std::sqrt(1.0 / 3 / n));
  const double mean2 = s2 / n;
  const double se2 = std::sqrt((s4 / n - mean2 * mean2) / n);
  EXPECT_LT(std::fabs(mean2 - 1.0 / 3), 3 * se2);
}

TEST(Wave, DegreeZeroIsConstant) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::negative_binomial(0.5)),
                       DegreeDistribution::geometric(0.5), 1, 1);
  WaveParams w{1, {0.0, 0.0, 1.0}, 0, 0};
  const auto pts = random_points(2, 10, 3);
  const auto v = wave_eval_scalar(w, cfg, pts);
  for (double x : v) EXPECT_NEAR(x, std::sqrt(0.5 / 0.5), 1e-15);
  w.epsilon = -1;
  EXPECT_NEAR(wave_eval_scalar(w, cfg, pts)[4], -1.0, 1e-15);
}

TEST(Wave, DegreeOneAtPole) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::negative_binomial(0.5)),
                       DegreeDistribution::geometric(0.5), 1, 1);
  WaveParams w{-1, {0.0, 0.0, 1.0}, 1, 0};
  PointSet pts(2);
  pts.push_back(SpherePoint::axis(2, 2));
  EXPECT_NEAR(wave_eval_scalar(w, cfg, pts)[0], -std::sqrt(3 * 0.25 / 0.25), 1e-14);
}

TEST(Wave, CircleUsesCosines) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::finite({0.2, 0.3, 0.5}, 1)),
                       DegreeDistribution::finite({1, 1, 1}), 1, 1);
  WaveParams w{1, {1.0, 0.0}, 2, 0};
  PointSet pts(1);
  pts.push_back(SpherePoint({0.0, 1.0}));
  EXPECT_NEAR(wave_eval_scalar(w, cfg, pts)[0], -std::sqrt(2 * 0.5 * 3), 1e-14);
  w.degree = 0;
  EXPECT_NEAR(wave_eval_scalar(w, cfg, pts)[0], std::sqrt(0.2 * 3), 1e-14);
}

TEST(Wave, OutsideSupportThrows) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::chentsov(2)), DegreeDistribution::odd_shifted_zeta(2),
                       1, 1);
  WaveParams w{1, {0.0, 0.0, 1.0}, 2, 0};
  EXPECT_THROW(wave_amplitude(w, cfg), ModelError);
}

TEST(Wave, VectorIdentityDegreeZero) {
  auto m = MultiCovarianceModel::from_matrices(2, {Eigen::MatrixXd::Identity(2, 2)});
  SimulationConfig cfg(m, DegreeDistribution::finite({1.0}), 1, 1);
  WaveParams w{1, {0.0, 0.0, 1.0}, 0, 0};
  const auto pts = random_points(2, 5, 8);
  const auto v = wave_eval_vector(w, cfg, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(v[2 * i], std::sqrt(2.0), 1e-15);
    EXPECT_EQ(v[2 * i + 1], 0.0);
  }
}

TEST(Simulate, SingleWave) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::negative_binomial(0.5)),
                       DegreeDistribution::geometric(0.5), 1, 17);
  const auto pts = random_points(2, 50, 4);
  const auto r = simulate(cfg, pts);
  const auto w = wave_eval_scalar(draw_wave(cfg, 0), cfg, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(r.value(i), w[i], 1e-14);
}

TEST(Simulate, Deterministic) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::spectral_matern(1, 0.75)),
                       DegreeDistribution::shifted_zeta(2), 300, 42);
  const auto pts = random_points(2, 2000, 5);
  const auto a = simulate(cfg, pts);
  cfg.threads = 3;
  const auto b = simulate(cfg, pts);
  EXPECT_EQ(a.values, b.values);
  cfg.threads = 1;
  EXPECT_EQ(simulate(cfg, pts).values, a.values);
}

TEST(Simulate, RejectsUncoveredDegrees) {
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::negative_binomial(0.5)),
                       DegreeDistribution::odd_shifted_zeta(2), 10, 1);
  EXPECT_THROW(validate(cfg), ValidationError);
  EXPECT_THROW(simulate(cfg, random_points(2, 3, 1)), ValidationError);
}

TEST(Simulate, PointVariance) {
  CovarianceModel nb(CovarianceSpec::negative_binomial(0.5));
  PointSet pts(2);
  pts.push_back(SpherePoint::axis(2, 0));
  const int M = 200;
  double s = 0.0, s2 = 0.0, s4 = 0.0;
  for (int m = 0; m < M; ++m) {
    SimulationConfig cfg(nb, DegreeDistribution::geometric(0.5), 500, 1000 + m);
    const double z = simulate(cfg, pts).value(0);
    s += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  const double var = s2 / M;
  const double se = std::sqrt((s4 / M - var * var) / M);
  EXPECT_LT(std::fabs(var - 1.0), 4 * se);
}
