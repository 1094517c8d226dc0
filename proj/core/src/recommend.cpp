#include "turnarcs/recommend.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"
#include "turnarcs/gegenbauer.hpp"

namespace turnarcs {

namespace {

constexpr double kDefaultZeta = 2.0;

Recommendation from_decay(const DecayProfile& decay, int d,
                          const std::function<double(std::int64_t)>& energy) {
  Recommendation r{0, DegreeDistribution::shifted_zeta(kDefaultZeta), 0.0, 0.0, false, {}};
  switch (decay.kind) {
    case CoefficientDecay::FiniteSupport: {
      // Proportional to each degree's share of the variance.
      std::vector<double> w(static_cast<std::size_t>(decay.last_degree) + 1);
      for (std::int64_t n = 0; n <= decay.last_degree; ++n) {
        w[static_cast<std::size_t>(n)] = energy(n);
      }
      r.case_number = 1;
      r.distribution = DegreeDistribution::finite(std::move(w));
      return r;
    }
    case CoefficientDecay::Geometric:
      // a_n proportional to b_n: liminf a_n^{1/n} = r >= r^3.
      r.case_number = 2;
      r.rate = decay.rate;
      r.distribution = DegreeDistribution::geometric(1.0 - decay.rate);
      return r;
    case CoefficientDecay::Polynomial: {
      r.case_number = 3;
      r.rate = decay.rate;
      r.theta_prime_max = theta_prime_max(decay.rate, d);
      r.interval_empty = !(r.theta_prime_max > 1.0);
      const double theta =
          r.interval_empty ? kDefaultZeta : std::min(kDefaultZeta, 0.5 * (1.0 + r.theta_prime_max));
      if (r.interval_empty) r.tag = kBoundNotGuaranteed;
      r.distribution = decay.odd_degrees_only ? DegreeDistribution::odd_shifted_zeta(theta)
                                              : DegreeDistribution::shifted_zeta(theta);
      return r;
    }
  }
  return r;
}

}  // namespace

std::string Recommendation::summary() const {
  std::ostringstream os;
  os << "case " << case_number;
  if (case_number == 2) os << " r=" << detail::shortest(rate) << " criterion liminf a_n^(1/n) >= " << detail::shortest(rate * rate * rate);
  if (case_number == 3) {
    os << " theta=" << detail::shortest(rate) << " interval ]1," << detail::shortest(theta_prime_max) << "[";
    if (interval_empty) os << " (empty)";
  }
  os << " distribution " << distribution.describe();
  if (!tag.empty()) os << " [" << tag << "]";
  return os.str();
}

double theta_prime_max(double theta, int d) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (d <= 2) return 3.0 * theta - 2.0;
  if (d == 3) return 3.0 * theta - 5.0;
  return 3.0 * theta - 5.0 - 6.0 * static_cast<double>((d - 1) / 2);
}

Recommendation recommend_distribution(const CovarianceModel& model) {
  const int d = model.dimension();
  const double lambda = 0.5 * (d - 1);
  return from_decay(model.decay(), d, [&](std::int64_t n) {
    const double b = model.schoenberg_coeff(n);
    return d == 1 ? b : b * gegenbauer_at_one(lambda, n);
  });
}

Recommendation recommend_distribution(const MultiCovarianceModel& model) {
  const int d = model.dimension();
  const double lambda = 0.5 * (d - 1);
  return from_decay(model.decay(), d, [&](std::int64_t n) {
    const double t = model.schoenberg_matrix(n).trace();
    return d == 1 ? t : t * gegenbauer_at_one(lambda, n);
  });
}

std::optional<std::int64_t> support_covers(const DegreeDistribution& dist,
                                           const CovarianceModel& model, std::int64_t n_max) {
  const double threshold = std::log(kNumericZero);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (model.log_schoenberg_coeff(n) > threshold && !dist.in_support(n)) return n;
  }
  return std::nullopt;
}

std::optional<std::int64_t> support_covers(const DegreeDistribution& dist,
                                           const MultiCovarianceModel& model, std::int64_t n_max) {
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (dist.in_support(n)) continue;
    if (model.schoenberg_matrix(n).cwiseAbs().maxCoeff() > kNumericZero) return n;
  }
  return std::nullopt;
}

}  // namespace turnarcs
