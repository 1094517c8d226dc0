#include "turnarcs/degree_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"

namespace turnarcs {

namespace {

double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("bad number '" + std::string(s) + "' in degree law '" + context + "'");
  }
  return v;
}

// Largest draw kept before the zeta sampler retries; P(X > 2^62) is far below
// any resolution that matters, and it keeps the shift in range.
constexpr double kZetaCeiling = 4.611686018427388e18;

}  // namespace

std::string to_string(DegreeKind kind) {
  switch (kind) {
    case DegreeKind::Finite: return "finite";
    case DegreeKind::Geometric: return "geometric";
    case DegreeKind::ShiftedZeta: return "zeta";
    case DegreeKind::OddShiftedZeta: return "oddzeta";
  }
  return "unknown";
}

DegreeDistribution DegreeDistribution::finite(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(std::isfinite(w) && w >= 0.0)) throw DomainError("degree weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("degree weights must not all vanish");
  DegreeDistribution dist;
  dist.kind_ = DegreeKind::Finite;
  dist.param_ = std::numeric_limits<double>::quiet_NaN();
  for (double& w : weights) w /= total;
  dist.cdf_.resize(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    dist.cdf_[i] = acc;
  }
  dist.pmf_ = std::move(weights);
  return dist;
}

DegreeDistribution DegreeDistribution::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric parameter must lie in ]0,1[");
  DegreeDistribution dist;
  dist.kind_ = DegreeKind::Geometric;
  dist.param_ = p;
  dist.log1m_p_ = std::log1p(-p);
  return dist;
}

DegreeDistribution DegreeDistribution::shifted_zeta(double theta) {
  if (!(theta > 1.0) || !std::isfinite(theta)) throw DomainError("zeta parameter must exceed 1");
  DegreeDistribution dist;
  dist.kind_ = DegreeKind::ShiftedZeta;
  dist.param_ = theta;
  dist.log_norm_ = std::log(boost::math::zeta(theta));
  return dist;
}

DegreeDistribution DegreeDistribution::odd_shifted_zeta(double theta) {
  DegreeDistribution dist = shifted_zeta(theta);
  dist.kind_ = DegreeKind::OddShiftedZeta;
  return dist;
}

DegreeDistribution DegreeDistribution::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("degree law '" + text + "' must look like kind:parameter");
  }
  const std::string kind = text.substr(0, colon);
  const std::string_view rest = std::string_view(text).substr(colon + 1);
  if (kind == "geometric") return geometric(parse_double(rest, text));
  if (kind == "zeta") return shifted_zeta(parse_double(rest, text));
  if (kind == "oddzeta") return odd_shifted_zeta(parse_double(rest, text));
  if (kind == "finite") {
    std::vector<double> w;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto stop = comma == std::string_view::npos ? rest.size() : comma;
      w.push_back(parse_double(rest.substr(start, stop - start), text));
      start = stop + 1;
    }
    return finite(std::move(w));
  }
  throw ParseError("unknown degree law '" + kind + "'");
}

bool DegreeDistribution::in_support(std::int64_t n) const {
  if (n < 0) return false;
  switch (kind_) {
    case DegreeKind::Finite:
      return n < static_cast<std::int64_t>(pmf_.size()) && pmf_[static_cast<std::size_t>(n)] > 0.0;
    case DegreeKind::Geometric:
    case DegreeKind::ShiftedZeta:
      return true;
    case DegreeKind::OddShiftedZeta:
      return n % 2 == 1;
  }
  return false;
}

double DegreeDistribution::log_pmf(std::int64_t n) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!in_support(n)) return kNegInf;
  switch (kind_) {
    case DegreeKind::Finite: return std::log(pmf_[static_cast<std::size_t>(n)]);
    case DegreeKind::Geometric: return std::log(param_) + static_cast<double>(n) * log1m_p_;
    case DegreeKind::ShiftedZeta:
      return -param_ * std::log(static_cast<double>(n) + 1.0) - log_norm_;
    case DegreeKind::OddShiftedZeta:
      return -param_ * std::log(static_cast<double>((n - 1) / 2) + 1.0) - log_norm_;
  }
  return kNegInf;
}

double DegreeDistribution::pmf(std::int64_t n) const { return std::exp(log_pmf(n)); }

double DegreeDistribution::tail(std::int64_t n) const {
  if (n < 0) return 1.0;
  switch (kind_) {
    case DegreeKind::Finite: {
      if (n >= static_cast<std::int64_t>(cdf_.size()) - 1) return 0.0;
      double t = 0.0;
      for (std::size_t k = static_cast<std::size_t>(n) + 1; k < pmf_.size(); ++k) t += pmf_[k];
      return t;
    }
    case DegreeKind::Geometric:
      return std::exp(static_cast<double>(n + 1) * log1m_p_);
    case DegreeKind::ShiftedZeta:
    case DegreeKind::OddShiftedZeta: {
      // Mass beyond shifted index k is the Hurwitz tail zeta(theta', k + 2).
      if (kind_ == DegreeKind::OddShiftedZeta && n == 0) return 1.0;
      const std::int64_t k = kind_ == DegreeKind::ShiftedZeta ? n : (n - 1) / 2;
      const double a = static_cast<double>(k) + 2.0;
      const double s = param_;
      const double hz = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
                        s * std::pow(a, -s - 1.0) / 12.0 -
                        s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
      if (k < 64) {
        double head = 0.0;
        for (std::int64_t j = 0; j <= k; ++j) head += std::pow(static_cast<double>(j) + 1.0, -s);
        return std::max(0.0, 1.0 - head / std::exp(log_norm_));
      }
      // Euler-Maclaurin; the first omitted term is O(a^{-s-5}).
      return hz / std::exp(log_norm_);
    }
  }
  return 0.0;
}

std::int64_t DegreeDistribution::sample(RandomStream& rng) const {
  switch (kind_) {
    case DegreeKind::Finite: {
      const double u = rng.uniform_open();
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      auto idx = static_cast<std::int64_t>(it - cdf_.begin());
      // Rounding in the last cumulative weight.
      idx = std::min<std::int64_t>(idx, static_cast<std::int64_t>(pmf_.size()) - 1);
      while (pmf_[static_cast<std::size_t>(idx)] == 0.0) --idx;
      return idx;
    }
    case DegreeKind::Geometric: {
      for (;;) {
        const double x = std::floor(std::log(rng.uniform_open()) / log1m_p_);
        if (x < kZetaCeiling) return static_cast<std::int64_t>(x);
      }
    }
    case DegreeKind::ShiftedZeta:
    case DegreeKind::OddShiftedZeta: {
      // Devroye's rejection sampler for the zeta law on {1, 2, ...}.
      const double sm1 = param_ - 1.0;
      const double b = std::exp2(sm1);
      for (;;) {
        const double u = rng.uniform_open();
        const double v = rng.uniform_open();
        const double x = std::floor(std::pow(u, -1.0 / sm1));
        if (!(x < kZetaCeiling)) continue;
        const double t = std::pow(1.0 + 1.0 / x, sm1);
        if (v * x * (t - 1.0) / (b - 1.0) <= t / b) {
          const auto m = static_cast<std::int64_t>(x) - 1;
          return kind_ == DegreeKind::ShiftedZeta ? m : 2 * m + 1;
        }
      }
    }
  }
  return 0;
}

std::string DegreeDistribution::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << ':';
  if (kind_ == DegreeKind::Finite) {
    for (std::size_t i = 0; i < pmf_.size(); ++i) os << (i ? "," : "") << detail::shortest(pmf_[i]);
  } else {
    os << detail::shortest(param_);
  }
  return os.str();
}

}  // namespace turnarcs
