#include "turnarcs/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "turnarcs/errors.hpp"
#include "turnarcs/gegenbauer.hpp"
#include "turnarcs/recommend.hpp"

namespace turnarcs {

namespace {

constexpr std::size_t kBlockSize = 512;

// Everything about one wave the evaluation kernel needs, with the pole
// restricted to the coordinates that are nonzero somewhere in the point set.
struct PreparedWave {
  std::int64_t degree;
  std::vector<double> pole;
  std::vector<double> amplitude;  // one per component
  bool silent;                    // every amplitude is zero
};

struct Kernel {
  int d;
  int p;
  std::vector<std::size_t> active;  // coordinates used by some point
  std::optional<NormalizedGegenbauer> gegenbauer;

  // out[i] = g_kappa(omega^T x_i) for the block, cos(kappa theta) when d = 1.
  void shape(const PreparedWave& w, const std::vector<double>& xs, std::size_t m,
             std::vector<double>& t, std::vector<double>& g, std::vector<double>& sa,
             std::vector<double>& sb) const {
    std::fill_n(t.begin(), m, 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double c = w.pole[k];
      const double* col = xs.data() + k * kBlockSize;
      for (std::size_t i = 0; i < m; ++i) t[i] += c * col[i];
    }
    for (std::size_t i = 0; i < m; ++i) t[i] = std::clamp(t[i], -1.0, 1.0);
    if (d == 1) {
      const double kappa = static_cast<double>(w.degree);
      for (std::size_t i = 0; i < m; ++i) g[i] = std::cos(kappa * std::acos(t[i]));
      return;
    }
    gegenbauer->evaluate(w.degree, std::span<const double>(t.data(), m), std::span<double>(g.data(), m),
                         std::span<double>(sa.data(), m), std::span<double>(sb.data(), m));
  }

  // Coordinates of points [begin, begin + m), one column per active axis.
  void gather(const PointSet& points, std::size_t begin, std::size_t m, std::vector<double>& xs) const {
    for (std::size_t k = 0; k < active.size(); ++k) {
      double* col = xs.data() + k * kBlockSize;
      for (std::size_t i = 0; i < m; ++i) col[i] = points[begin + i][active[k]];
    }
  }
};

Kernel make_kernel(const SimulationConfig& config, const PointSet& points) {
  Kernel k;
  k.d = config.dimension();
  k.p = config.components();
  const std::size_t stride = points.stride();
  for (std::size_t c = 0; c < stride; ++c) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i][c] != 0.0) {
        k.active.push_back(c);
        break;
      }
    }
  }
  if (k.d >= 2) k.gegenbauer.emplace(0.5 * (k.d - 1));
  return k;
}

PreparedWave prepare(const WaveParams& wave, const SimulationConfig& config, const Kernel& kernel) {
  PreparedWave w;
  w.degree = wave.degree;
  w.pole.reserve(kernel.active.size());
  for (std::size_t c : kernel.active) w.pole.push_back(wave.pole[c]);
  w.amplitude = wave_amplitude(wave, config);
  w.silent = std::all_of(w.amplitude.begin(), w.amplitude.end(), [](double a) { return a == 0.0; });
  return w;
}

void check_points(const SimulationConfig& config, const PointSet& points) {
  if (points.dimension() != config.dimension()) {
    throw DomainError("points live on a sphere of the wrong dimension");
  }
}

std::vector<double> eval_single(const WaveParams& wave, const SimulationConfig& config,
                                const PointSet& points) {
  check_points(config, points);
  const Kernel kernel = make_kernel(config, points);
  const PreparedWave w = prepare(wave, config, kernel);
  const auto p = static_cast<std::size_t>(kernel.p);
  std::vector<double> out(points.size() * p, 0.0);
  std::vector<double> xs(kernel.active.size() * kBlockSize), t(kBlockSize), g(kBlockSize),
      sa(kBlockSize), sb(kBlockSize);
  for (std::size_t begin = 0; begin < points.size(); begin += kBlockSize) {
    const std::size_t m = std::min(kBlockSize, points.size() - begin);
    kernel.gather(points, begin, m, xs);
    kernel.shape(w, xs, m, t, g, sa, sb);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < p; ++c) out[(begin + i) * p + c] = w.amplitude[c] * g[i];
    }
  }
  return out;
}

}  // namespace

SimulationConfig::SimulationConfig(CovarianceModel model, DegreeDistribution degrees_,
                                   std::int64_t waves_, std::uint64_t seed_)
    : scalar(std::move(model)), degrees(std::move(degrees_)), waves(waves_), seed(seed_) {}

SimulationConfig::SimulationConfig(MultiCovarianceModel model, DegreeDistribution degrees_,
                                   std::int64_t waves_, std::uint64_t seed_)
    : multi(std::move(model)), degrees(std::move(degrees_)), waves(waves_), seed(seed_) {}

int SimulationConfig::dimension() const noexcept {
  return scalar ? scalar->dimension() : multi->dimension();
}

int SimulationConfig::components() const noexcept { return scalar ? 1 : multi->components(); }

std::string SimulationConfig::describe_model() const {
  return scalar ? scalar->spec().describe() : multi->describe();
}

void validate(const SimulationConfig& config) {
  std::vector<std::string> v;
  if (config.waves < 1) v.emplace_back("L ≥ 1");
  const auto uncovered = config.scalar
                             ? support_covers(config.degrees, *config.scalar, kSupportCheckDegrees)
                             : support_covers(config.degrees, *config.multi, kSupportCheckDegrees);
  if (uncovered) {
    v.push_back("degree law covers the Schoenberg support (misses n = " +
                std::to_string(*uncovered) + ")");
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

WaveParams draw_wave(const SimulationConfig& config, std::uint64_t index) {
  RandomStream rng(config.seed, index);
  WaveParams w;
  w.epsilon = rng.sign();
  w.degree = config.degrees.sample(rng);
  const SpherePoint pole = sample_pole(config.dimension(), rng);
  w.pole.assign(pole.coords().begin(), pole.coords().end());
  const int p = config.components();
  w.component = p > 1 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(p))) : 0;
  return w;
}

std::vector<double> wave_amplitude(const WaveParams& wave, const SimulationConfig& config) {
  const int d = config.dimension();
  const int p = config.components();
  const std::int64_t kappa = wave.degree;
  const double log_a = config.degrees.log_pmf(kappa);
  if (!std::isfinite(log_a)) {
    throw ModelError("wave degree " + std::to_string(kappa) + " is outside the degree law's support");
  }
  // Squared weight without the Schoenberg part; d = 1 carries 1 at kappa = 0
  // and 2 otherwise.
  double log_weight_sq;
  double log_g1 = 0.0;
  if (d == 1) {
    log_weight_sq = (kappa == 0 ? 0.0 : std::log(2.0)) - log_a;
  } else {
    log_weight_sq = std::log(2.0 * static_cast<double>(kappa) + d - 1.0) - log_a - std::log(d - 1.0);
    log_g1 = log_gegenbauer_at_one(0.5 * (d - 1), kappa);
  }
  const double eps = static_cast<double>(wave.epsilon);

  if (config.scalar) {
    const double log_b = config.scalar->log_schoenberg_coeff(kappa);
    if (log_b == -std::numeric_limits<double>::infinity()) return {0.0};
    return {eps * std::exp(0.5 * (log_b + log_weight_sq) + log_g1)};
  }
  const SchoenbergFactor f = config.multi->factor(kappa);
  const Eigen::VectorXd gamma = f.column(wave.component);
  const double log_scale = 0.5 * (std::log(static_cast<double>(p)) + log_weight_sq) + log_g1;
  std::vector<double> amp(static_cast<std::size_t>(p));
  for (int c = 0; c < p; ++c) {
    const double gc = gamma(c);
    amp[static_cast<std::size_t>(c)] =
        gc == 0.0 ? 0.0 : eps * std::copysign(std::exp(std::log(std::fabs(gc)) + log_scale), gc);
  }
  return amp;
}

std::vector<double> wave_eval_scalar(const WaveParams& wave, const SimulationConfig& config,
                                     const PointSet& points) {
  if (config.components() != 1) throw DomainError("wave_eval_scalar needs a scalar model");
  return eval_single(wave, config, points);
}

std::vector<double> wave_eval_vector(const WaveParams& wave, const SimulationConfig& config,
                                     const PointSet& points) {
  if (!config.multi) throw DomainError("wave_eval_vector needs a multivariate model");
  return eval_single(wave, config, points);
}

Realization simulate(const SimulationConfig& config, const PointSet& points) {
  validate(config);
  check_points(config, points);
  const Kernel kernel = make_kernel(config, points);
  const auto L = static_cast<std::size_t>(config.waves);
  const auto p = static_cast<std::size_t>(kernel.p);

  std::vector<PreparedWave> waves;
  waves.reserve(L);
  for (std::size_t l = 0; l < L; ++l) {
    waves.push_back(prepare(draw_wave(config, l), config, kernel));
    for (double a : waves.back().amplitude) {
      if (!std::isfinite(a)) {
        throw ModelError("non-finite amplitude at wave " + std::to_string(l));
      }
    }
  }

  Realization out{points, kernel.p, std::vector<double>(points.size() * p), {}, {}, 0, 0};
  out.model = config.describe_model();
  out.degrees = config.degrees.describe();
  out.waves = config.waves;
  out.seed = config.seed;

  const std::size_t n_blocks = (points.size() + kBlockSize - 1) / kBlockSize;
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n_blocks);

  auto worker = [&] {
    std::vector<double> xs(kernel.active.size() * kBlockSize), t(kBlockSize), g(kBlockSize),
        sa(kBlockSize), sb(kBlockSize), acc(p * kBlockSize), comp(p * kBlockSize);
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      try {
        const std::size_t begin = b * kBlockSize;
        const std::size_t m = std::min(kBlockSize, points.size() - begin);
        kernel.gather(points, begin, m, xs);
        std::fill(acc.begin(), acc.end(), 0.0);
        std::fill(comp.begin(), comp.end(), 0.0);
        for (std::size_t l = 0; l < L; ++l) {
          const PreparedWave& w = waves[l];
          if (w.silent) continue;
          kernel.shape(w, xs, m, t, g, sa, sb);
          for (std::size_t c = 0; c < p; ++c) {
            const double a = w.amplitude[c];
            double* ac = acc.data() + c * kBlockSize;
            if (config.compensated) {
              double* cc = comp.data() + c * kBlockSize;
              for (std::size_t i = 0; i < m; ++i) {
                const double y = a * g[i] - cc[i];
                const double s = ac[i] + y;
                cc[i] = (s - ac[i]) - y;
                ac[i] = s;
              }
            } else {
              for (std::size_t i = 0; i < m; ++i) ac[i] += a * g[i];
            }
          }
          double probe = 0.0;
          for (std::size_t i = 0; i < m; ++i) probe += g[i];
          if (!std::isfinite(probe)) {
            throw ModelError("non-finite value at wave " + std::to_string(l));
          }
        }
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t c = 0; c < p; ++c) {
            out.values[(begin + i) * p + c] = acc[c * kBlockSize + i] * scale;
          }
        }
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_blocks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace turnarcs
