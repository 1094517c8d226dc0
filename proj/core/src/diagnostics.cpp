#include "turnarcs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "turnarcs/errors.hpp"
#include "turnarcs/gegenbauer.hpp"
#include "turnarcs/quadrature.hpp"
#include "turnarcs/recommend.hpp"

namespace turnarcs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMu3RelativeTolerance = 1e-8;
constexpr double kMu3TailTarget = 1e-4;
constexpr std::int64_t kMu3StartDegree = 64;
constexpr std::int64_t kMu3MaxDegree = 4096;

// log of 2 Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)), the reciprocal of the
// half-range integral of sin^{d-1}.
double log_sphere_factor(int d) {
  return std::log(2.0) + std::lgamma(0.5 * (d + 1)) - 0.5 * std::log(M_PI) - std::lgamma(0.5 * d);
}

// E|g_n|^3 for the normalized polynomial, n = 0 ... max_degree.
std::vector<double> normalized_mu3_table(std::int64_t max_degree, int d) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double lambda = 0.5 * (d - 1);
  const NormalizedGegenbauer g(lambda);
  const auto size = static_cast<std::size_t>(max_degree) + 1;
  std::vector<double> sums(size, 0.0), values(size);

  // Several panels per oscillation keeps the |.|^3 kinks from costing accuracy.
  const std::int64_t panels = std::max<std::int64_t>(32, 4 * (max_degree + 1));
  const double h = 0.5 * M_PI / static_cast<double>(panels);
  auto node = [&](double phi, double weight) {
    g.table(max_degree, std::cos(phi), values);
    const double s = weight * std::pow(std::sin(phi), d - 1);
    for (std::size_t k = 0; k < size; ++k) {
      const double a = std::fabs(values[k]);
      sums[k] += s * a * a * a;
    }
  };
  for (std::int64_t j = 0; j < panels; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double off = 0.5 * h * x[i];
      node(mid - off, 0.5 * h * w[i]);
      if (x[i] != 0.0) node(mid + off, 0.5 * h * w[i]);
    }
  }
  const double factor = std::exp(log_sphere_factor(d));
  for (double& s : sums) s *= factor;
  return sums;
}

// Decides convergence of the moment series from the decay profiles alone.
bool series_diverges(const DecayProfile& decay, const DegreeDistribution& dist, int d) {
  if (decay.kind == CoefficientDecay::FiniteSupport) return false;
  if (dist.kind() == DegreeKind::Finite) return false;  // only degrees with a_n > 0 count
  if (decay.kind == CoefficientDecay::Geometric) {
    if (dist.kind() == DegreeKind::Geometric) return !(1.0 - dist.parameter() >= std::pow(decay.rate, 3));
    return false;
  }
  if (dist.kind() == DegreeKind::Geometric) return true;
  return !(dist.parameter() < theta_prime_max(decay.rate, d));
}

// Sums summand(n) = exp(log_weight(n)) * E|G_n|^3 over 0 ... n_max and
// estimates the remainder from the trend of the last terms.
Mu3Result sum_series(const std::function<double(std::int64_t)>& log_weight, int d,
                     const DecayProfile& decay, const DegreeDistribution& dist, std::int64_t n_max) {
  Mu3Result r;
  if (series_diverges(decay, dist, d)) {
    r.value = std::numeric_limits<double>::infinity();
    r.tail_bound = std::numeric_limits<double>::infinity();
    r.divergent = true;
    return r;
  }
  std::int64_t last = n_max;
  bool exact = false;
  if (decay.kind == CoefficientDecay::FiniteSupport) {
    last = decay.last_degree;
    exact = true;
  } else if (dist.kind() == DegreeKind::Finite) {
    last = static_cast<std::int64_t>(dist.weights().size()) - 1;
    exact = true;
  }
  const double lambda = 0.5 * (d - 1);
  const auto table = normalized_mu3_table(last, d);
  std::vector<double> terms(static_cast<std::size_t>(last) + 1, 0.0);
  for (std::int64_t n = 0; n <= last; ++n) {
    const double lw = log_weight(n);
    if (lw == kNegInf) continue;
    const double m = table[static_cast<std::size_t>(n)];
    terms[static_cast<std::size_t>(n)] = std::exp(lw + 3.0 * log_gegenbauer_at_one(lambda, n)) * m;
  }
  double sum = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
  r.terms = last + 1;
  if (exact) {
    r.value = sum;
    return r;
  }

  // Latest nonzero term at or before n.
  auto latest = [&](std::int64_t n) {
    while (n > 0 && terms[static_cast<std::size_t>(n)] == 0.0) --n;
    return n;
  };
  const std::int64_t n1 = latest(last);
  const std::int64_t n0 = latest(last / 2);
  const double s1 = terms[static_cast<std::size_t>(n1)];
  const double s0 = terms[static_cast<std::size_t>(n0)];
  double tail = std::numeric_limits<double>::infinity();
  if (s1 == 0.0) {
    tail = 0.0;
  } else if (n1 > n0 && s0 > 0.0) {
    const double gap = static_cast<double>(n1 - n0);
    // Odd-only sequences have one nonzero term per two degrees.
    const double density = decay.odd_degrees_only ? 0.5 : 1.0;
    if (decay.kind == CoefficientDecay::Geometric) {
      const double ratio = std::pow(s1 / s0, 1.0 / gap);
      if (ratio < 1.0) tail = s1 * ratio / (1.0 - ratio);
    } else {
      const double q = std::log(s0 / s1) / std::log(static_cast<double>(n1) / static_cast<double>(n0));
      if (q > 1.0) tail = density * s1 * static_cast<double>(n1) / (q - 1.0);
    }
  }
  r.tail_bound = tail;
  r.value = sum + tail;
  return r;
}

Mu3Result adaptive(const std::function<Mu3Result(std::int64_t)>& at, std::int64_t n_max) {
  if (n_max > 0) return at(n_max);
  Mu3Result r;
  for (std::int64_t n = kMu3StartDegree; n <= kMu3MaxDegree; n *= 2) {
    r = at(n);
    if (r.divergent || r.tail_bound <= kMu3TailTarget * r.value) break;
  }
  return r;
}

double log_degree_factor(std::int64_t n, int d) {
  return 1.5 * (std::log(2.0 * static_cast<double>(n) + d - 1.0) - std::log(d - 1.0));
}

}  // namespace

CovarianceEstimate empirical_covariance(std::span<const Realization> realizations,
                                        std::span<const PointPair> pairs, int bins) {
  if (realizations.size() < 2) throw DomainError("need at least two realizations");
  if (bins < 1) throw DomainError("need at least one lag bin");
  const Realization& first = realizations.front();
  const int p = first.p;
  const auto np = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  for (const auto& r : realizations) {
    if (r.p != p || r.values.size() != first.values.size()) {
      throw DomainError("realizations do not share one point set");
    }
  }
  const auto nb = static_cast<std::size_t>(bins);
  const double width = M_PI / bins;

  CovarianceEstimate est;
  est.p = p;
  for (std::size_t b = 0; b < nb; ++b) {
    est.bin_lower.push_back(width * static_cast<double>(b));
    est.bin_upper.push_back(width * static_cast<double>(b + 1));
    est.bin_center.push_back(width * (static_cast<double>(b) + 0.5));
  }
  est.pair_count.assign(nb, 0);
  std::vector<std::size_t> bin_of(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double theta = geodesic(first.points[pairs[k].first], first.points[pairs[k].second]);
    bin_of[k] = std::min(nb - 1, static_cast<std::size_t>(theta / width));
    ++est.pair_count[bin_of[k]];
  }

  const double M = static_cast<double>(realizations.size());
  std::vector<std::vector<double>> mean(nb, std::vector<double>(np, 0.0));
  std::vector<std::vector<double>> sq(nb, std::vector<double>(np, 0.0));
  std::vector<double> sums(nb * np);
  for (const auto& r : realizations) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      double* s = sums.data() + bin_of[k] * np;
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
          const double v = 0.5 * (r.value(pairs[k].first, i) * r.value(pairs[k].second, j) +
                                  r.value(pairs[k].first, j) * r.value(pairs[k].second, i));
          s[static_cast<std::size_t>(i * p + j)] += v;
        }
      }
    }
    for (std::size_t b = 0; b < nb; ++b) {
      if (est.pair_count[b] == 0) continue;
      for (std::size_t e = 0; e < np; ++e) {
        const double m = sums[b * np + e] / static_cast<double>(est.pair_count[b]);
        mean[b][e] += m;
        sq[b][e] += m * m;
      }
    }
  }
  est.estimate.assign(nb, std::vector<double>(np, 0.0));
  est.standard_error.assign(nb, std::vector<double>(np, 0.0));
  for (std::size_t b = 0; b < nb; ++b) {
    if (est.pair_count[b] == 0) continue;
    for (std::size_t e = 0; e < np; ++e) {
      const double mu = mean[b][e] / M;
      const double var = std::max(0.0, (sq[b][e] - M * mu * mu) / (M - 1.0));
      est.estimate[b][e] = mu;
      est.standard_error[b][e] = std::sqrt(var / M);
    }
  }
  return est;
}

double mu3_gegenbauer(std::int64_t n, int d) {
  if (d < 2) throw DomainError("mu3_gegenbauer needs d >= 2");
  if (n < 0) throw DomainError("degree must be nonnegative");
  const double lambda = 0.5 * (d - 1);
  const NormalizedGegenbauer g(lambda);
  const auto f = [&](double phi) {
    const double v = std::fabs(g.value(n, std::cos(phi)));
    return v * v * v * std::pow(std::sin(phi), d - 1);
  };
  QuadratureTolerance tol;
  tol.absolute = 0.0;
  tol.relative = kMu3RelativeTolerance;
  // One panel per zero spacing, so each panel holds at most one kink.
  const int panels = static_cast<int>(std::min<std::int64_t>(n + 1, 100000));
  const QuadratureResult q = integrate_panels(f, 0.0, 0.5 * M_PI, panels, tol);
  return std::exp(log_sphere_factor(d) + 3.0 * log_gegenbauer_at_one(lambda, n)) * q.value;
}

std::vector<double> mu3_gegenbauer_table(std::int64_t max_degree, int d) {
  if (d < 2) throw DomainError("mu3_gegenbauer needs d >= 2");
  if (max_degree < 0) throw DomainError("degree must be nonnegative");
  auto t = normalized_mu3_table(max_degree, d);
  const double lambda = 0.5 * (d - 1);
  for (std::size_t n = 0; n < t.size(); ++n) {
    t[n] *= std::exp(3.0 * log_gegenbauer_at_one(lambda, static_cast<std::int64_t>(n)));
  }
  return t;
}

Mu3Result mu3_wave(const CovarianceModel& model, const DegreeDistribution& dist, std::int64_t n_max) {
  const int d = model.dimension();
  if (d < 2) throw DomainError("mu3_wave needs d >= 2");
  const auto log_weight = [&](std::int64_t n) {
    const double la = dist.log_pmf(n);
    const double lb = model.log_schoenberg_coeff(n);
    if (la == kNegInf || lb == kNegInf) return kNegInf;
    return 1.5 * lb + log_degree_factor(n, d) - 0.5 * la;
  };
  const DecayProfile decay = model.decay();
  return adaptive([&](std::int64_t n) { return sum_series(log_weight, d, decay, dist, n); }, n_max);
}

std::vector<Mu3Result> mu3_wave(const MultiCovarianceModel& model, const DegreeDistribution& dist,
                                std::int64_t n_max) {
  const int d = model.dimension();
  const int p = model.components();
  if (d < 2) throw DomainError("mu3_wave needs d >= 2");
  const DecayProfile decay = model.decay();
  std::vector<Mu3Result> out;
  for (int i = 0; i < p; ++i) {
    const auto log_weight = [&](std::int64_t n) {
      const double la = dist.log_pmf(n);
      if (la == kNegInf) return kNegInf;
      const SchoenbergFactor f = model.factor(n);
      double s = 0.0;
      for (int iota = 0; iota < p; ++iota) s += std::pow(std::fabs(f.gamma(i, iota)), 3);
      if (s == 0.0) return kNegInf;
      return 0.5 * std::log(static_cast<double>(p)) + log_degree_factor(n, d) - 0.5 * la + std::log(s);
    };
    out.push_back(
        adaptive([&](std::int64_t n) { return sum_series(log_weight, d, decay, dist, n); }, n_max));
  }
  return out;
}

double berry_esseen_bound(double mu3, double sigma, std::int64_t L) {
  if (!(mu3 > 0.0) || !(sigma > 0.0) || L < 1) {
    throw DomainError("berry_esseen_bound needs mu3 > 0, sigma > 0 and L >= 1");
  }
  return kBerryEsseenConstant * mu3 / (sigma * sigma * sigma * std::sqrt(static_cast<double>(L)));
}

double ks_normality(std::span<const double> samples, double sigma) {
  if (samples.size() < 100) throw DomainError("ks_normality needs at least 100 samples");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  std::vector<double> z(samples.begin(), samples.end());
  for (double& v : z) v /= sigma;
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    dmax = std::max({dmax, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return dmax;
}

double ks_sampling_error(std::size_t n) {
  return std::sqrt(0.5 * M_PI) * std::log(2.0) / std::sqrt(static_cast<double>(n));
}

DuplicationResult duplication_check(std::int64_t n, std::int64_t k, int d, std::span<const double> x1,
                                    std::span<const double> x2, std::int64_t draws, RandomStream& rng) {
  if (d < 2) throw DomainError("duplication_check needs d >= 2");
  if (draws < 2) throw DomainError("need at least two draws");
  const double lambda = 0.5 * (d - 1);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const SpherePoint w = sample_pole(d, rng);
    const double v = gegenbauer_eval({lambda, n}, std::clamp(dot(w.coords(), x1), -1.0, 1.0)) *
                     gegenbauer_eval({lambda, k}, std::clamp(dot(w.coords(), x2), -1.0, 1.0));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(draws - 1);
  const double expected =
      n == k ? (d - 1.0) / (2.0 * static_cast<double>(n) + d - 1.0) *
                   gegenbauer_eval({lambda, n}, std::clamp(dot(x1, x2), -1.0, 1.0))
             : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(draws)), expected};
}

}  // namespace turnarcs
