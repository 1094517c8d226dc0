#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "turnarcs/random.hpp"

namespace turnarcs {

enum class DegreeKind {
  Finite,          // explicit pmf a_0 ... a_N
  Geometric,       // a_n = p (1 - p)^n, n >= 0
  ShiftedZeta,     // a_n = (n + 1)^{-theta'} / zeta(theta'), n >= 0
  OddShiftedZeta,  // a_{2m+1} = (m + 1)^{-theta'} / zeta(theta'), m >= 0
};

std::string to_string(DegreeKind kind);

// Law of the wave degree kappa. Immutable; sampling takes a caller-owned
// stream.
class DegreeDistribution {
 public:
  // Weights are normalized to sum to one. Throws DomainError when a weight is
  // negative or non-finite, or when all weights vanish.
  static DegreeDistribution finite(std::vector<double> weights);
  // 0 < p < 1.
  static DegreeDistribution geometric(double p);
  // theta' > 1.
  static DegreeDistribution shifted_zeta(double theta);
  static DegreeDistribution odd_shifted_zeta(double theta);

  // Parses "geometric:P", "zeta:T", "oddzeta:T" or "finite:a0,a1,...".
  static DegreeDistribution parse(const std::string& text);

  DegreeKind kind() const noexcept { return kind_; }
  // p for Geometric, theta' for the zeta kinds, NaN for Finite.
  double parameter() const noexcept { return param_; }
  const std::vector<double>& weights() const noexcept { return pmf_; }

  double pmf(std::int64_t n) const;
  double log_pmf(std::int64_t n) const;
  // P(kappa > n).
  double tail(std::int64_t n) const;
  bool in_support(std::int64_t n) const;

  std::int64_t sample(RandomStream& rng) const;

  // Inverse of parse.
  std::string describe() const;

 private:
  DegreeDistribution() = default;

  DegreeKind kind_ = DegreeKind::Finite;
  double param_ = 0.0;
  double log_norm_ = 0.0;          // log zeta(theta')
  double log1m_p_ = 0.0;           // log(1 - p)
  std::vector<double> pmf_;        // Finite only
  std::vector<double> cdf_;        // Finite only
};

}  // namespace turnarcs
