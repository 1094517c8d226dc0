#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "turnarcs/covariance.hpp"
#include "turnarcs/degree_distribution.hpp"
#include "turnarcs/multivariate.hpp"
#include "turnarcs/random.hpp"
#include "turnarcs/simulator.hpp"

namespace turnarcs {

inline constexpr double kBerryEsseenConstant = 0.4748;

struct PointPair {
  std::size_t first;
  std::size_t second;
};

// Binned isotropic covariance estimate. Entry [b][i * p + j] is the estimate
// for components (i, j) in lag bin b.
struct CovarianceEstimate {
  int p = 1;
  std::vector<double> bin_lower;
  std::vector<double> bin_upper;
  std::vector<double> bin_center;
  std::vector<std::size_t> pair_count;
  std::vector<std::vector<double>> estimate;
  std::vector<std::vector<double>> standard_error;

  std::size_t bins() const { return bin_center.size(); }
  bool empty(std::size_t b) const { return pair_count[b] == 0; }
};

/// Average of the symmetrized products (Z_i(x) Z_j(y) + Z_j(x) Z_i(y)) / 2
/// per geodesic lag bin, with standard errors from the spread of the
/// per-realization bin means. Needs at least two realizations on one point
/// set.
CovarianceEstimate empirical_covariance(std::span<const Realization> realizations,
                                        std::span<const PointPair> pairs, int bins = 20);

/// E|G_n(omega^T x)|^3 for omega uniform on S^d, by adaptive quadrature to
/// relative tolerance 1e-8. Throws QuadratureError.
double mu3_gegenbauer(std::int64_t n, int d);

/// mu3_gegenbauer for n = 0 ... max_degree from one composite Gauss-Legendre
/// pass; relative accuracy about 1e-9 for degrees below 10^4.
std::vector<double> mu3_gegenbauer_table(std::int64_t max_degree, int d);

struct Mu3Result {
  double value = 0.0;        // truncated sum plus the tail estimate
  double tail_bound = 0.0;   // estimated neglected remainder
  std::int64_t terms = 0;    // degrees 0 ... terms - 1 were summed exactly
  bool divergent = false;    // the series diverges; value is meaningless
};

/// Third absolute moment of one scalar wave. n_max = 0 doubles the
/// truncation until the tail estimate is below 1e-4 of the value.
Mu3Result mu3_wave(const CovarianceModel& model, const DegreeDistribution& dist,
                   std::int64_t n_max = 0);
/// Per-component third absolute moments of one vector wave.
std::vector<Mu3Result> mu3_wave(const MultiCovarianceModel& model, const DegreeDistribution& dist,
                                std::int64_t n_max = 0);

/// xi mu3 / (sigma^3 sqrt(L)) with xi = 0.4748.
double berry_esseen_bound(double mu3, double sigma, std::int64_t L);

/// Exact one-sample Kolmogorov-Smirnov distance between samples / sigma and
/// the standard normal law. Needs at least 100 samples.
double ks_normality(std::span<const double> samples, double sigma);

/// Expected KS distance under exact normality, sqrt(pi / 2) log 2 / sqrt(n).
double ks_sampling_error(std::size_t n);

struct DuplicationResult {
  double mean;
  double standard_error;
  double expected;
};

/// Monte Carlo mean over `draws` uniform poles of G_n(omega^T x1) G_k(omega^T x2)
/// against delta_nk (d - 1) / (2n + d - 1) G_n(x1^T x2).
DuplicationResult duplication_check(std::int64_t n, std::int64_t k, int d,
                                    std::span<const double> x1, std::span<const double> x2,
                                    std::int64_t draws, RandomStream& rng);

}  // namespace turnarcs
