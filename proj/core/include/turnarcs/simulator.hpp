#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turnarcs/covariance.hpp"
#include "turnarcs/degree_distribution.hpp"
#include "turnarcs/multivariate.hpp"
#include "turnarcs/random.hpp"
#include "turnarcs/sphere.hpp"

namespace turnarcs {

// The randomness of one Gegenbauer wave.
struct WaveParams {
  int epsilon = 1;             // Rademacher sign
  std::vector<double> pole;    // omega, uniform on S^d
  std::int64_t degree = 0;     // kappa
  int component = 0;           // iota, 0-based; always 0 for scalar fields
};

struct SimulationConfig {
  SimulationConfig(CovarianceModel model, DegreeDistribution degrees, std::int64_t waves,
                   std::uint64_t seed);
  SimulationConfig(MultiCovarianceModel model, DegreeDistribution degrees, std::int64_t waves,
                   std::uint64_t seed);

  std::optional<CovarianceModel> scalar;
  std::optional<MultiCovarianceModel> multi;
  DegreeDistribution degrees;
  std::int64_t waves;  // L
  std::uint64_t seed;
  // 0 picks the hardware concurrency. Output does not depend on it.
  unsigned threads = 1;
  bool compensated = false;

  int dimension() const noexcept;
  int components() const noexcept;
  std::string describe_model() const;
};

// Degrees checked for support coverage before simulating.
inline constexpr std::int64_t kSupportCheckDegrees = 10000;

/// Throws ValidationError when L < 1 or the degree law misses a degree with
/// nonzero Schoenberg coefficient.
void validate(const SimulationConfig& config);

/// Wave `index` of the configuration. A pure function of (seed, index).
WaveParams draw_wave(const SimulationConfig& config, std::uint64_t index);

/// Per-component amplitude of a wave, including the sign and G_kappa(1), so
/// that the wave equals amplitude * g_kappa(omega^T x) with g normalized.
/// Throws ModelError when kappa is outside the degree law's support.
std::vector<double> wave_amplitude(const WaveParams& wave, const SimulationConfig& config);

/// One scalar wave at every point.
std::vector<double> wave_eval_scalar(const WaveParams& wave, const SimulationConfig& config,
                                     const PointSet& points);
/// One vector wave, row-major points x p.
std::vector<double> wave_eval_vector(const WaveParams& wave, const SimulationConfig& config,
                                     const PointSet& points);

struct Realization {
  PointSet points;
  int p = 1;
  std::vector<double> values;  // row-major points x p

  std::string model;
  std::string degrees;
  std::int64_t waves = 0;
  std::uint64_t seed = 0;

  double value(std::size_t point, int component = 0) const {
    return values[point * static_cast<std::size_t>(p) + static_cast<std::size_t>(component)];
  }
};

/// L^{-1/2} times the sum of waves 0 ... L-1, accumulated in wave order.
/// Bit-identical for any thread count.
Realization simulate(const SimulationConfig& config, const PointSet& points);

}  // namespace turnarcs
