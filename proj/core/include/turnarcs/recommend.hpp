#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "turnarcs/covariance.hpp"
#include "turnarcs/degree_distribution.hpp"
#include "turnarcs/multivariate.hpp"

namespace turnarcs {

inline constexpr const char* kBoundNotGuaranteed = "Berry-Esséen bound not guaranteed finite";

// Degree law chosen so that the third absolute moment of one wave, and with
// it the Berry-Esseen bound, stays finite.
struct Recommendation {
  // 1: finite Schoenberg support; 2: geometric decay; 3: polynomial decay.
  int case_number = 0;
  DegreeDistribution distribution;
  // Case 2: limsup b_n^{1/n}. Case 3: decay order theta of b_n = O(n^-theta).
  double rate = 0.0;
  // Case 3 only: admissible zeta parameters form ]1, theta_prime_max[.
  double theta_prime_max = 0.0;
  bool interval_empty = false;
  // Empty, or kBoundNotGuaranteed.
  std::string tag;

  std::string summary() const;
};

/// Upper end of the admissible zeta-parameter interval for b_n = O(n^-theta)
/// on S^d. d = 1 uses the d = 2 branch.
double theta_prime_max(double theta, int d);

Recommendation recommend_distribution(const CovarianceModel& model);
Recommendation recommend_distribution(const MultiCovarianceModel& model);

inline constexpr double kNumericZero = 1e-300;

/// First degree n <= n_max with b_n > 1e-300 but a_n = 0, if any.
std::optional<std::int64_t> support_covers(const DegreeDistribution& dist,
                                           const CovarianceModel& model, std::int64_t n_max);
/// Same against max_ij |B_n(i, j)|.
std::optional<std::int64_t> support_covers(const DegreeDistribution& dist,
                                           const MultiCovarianceModel& model, std::int64_t n_max);

}  // namespace turnarcs
