#include "turnarcs/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <sstream>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"
#include "turnarcs/gegenbauer.hpp"

namespace turnarcs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogPi = 1.1447298858494002;      // log(pi)
constexpr double kLog2Pi = 1.8378770664093453;     // log(2 pi)

// Residual of the Schoenberg series accepted when K has no closed form.
constexpr double kSeriesTailTarget = 1e-8;
constexpr std::int64_t kMaxSeriesTerms = std::int64_t{1} << 21;
constexpr std::int64_t kMinSeriesTerms = 32;

// Sizes of the induction tables built at construction time.
constexpr std::int64_t kChentsovInductionTerms = 2048;
constexpr std::int64_t kExponentialInductionTerms = 4096;

double log_sinh(double x) { return x + std::log(-std::expm1(-2.0 * x)) - std::log(2.0); }
double log_cosh(double x) { return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0); }

double log_pochhammer(double a, std::int64_t n) {
  return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Sum of (k^2 + alpha^2)^{-s} over k >= 0: an explicit partial sum followed by
// an Euler-Maclaurin tail. The tail integral is the hypergeometric series
//   int_N^inf (x^2+a^2)^{-s} dx = N^{1-2s}/(2s-1) 2F1(s, s-1/2; s+1/2; -a^2/N^2),
// convergent because N >> a.
double spectral_matern_log_normalizer(double alpha, double nu) {
  const double s = nu + 0.5;
  const auto f = [&](double x) { return std::pow(x * x + alpha * alpha, -s); };
  const std::int64_t cut = std::max<std::int64_t>(1000, static_cast<std::int64_t>(std::ceil(100.0 * alpha)));
  const double N = static_cast<double>(cut);

  double partial = 0.0;
  double comp = 0.0;
  // Smallest terms first.
  for (std::int64_t k = cut - 1; k >= 0; --k) {
    const double y = f(static_cast<double>(k)) - comp;
    const double t = partial + y;
    comp = (t - partial) - y;
    partial = t;
  }

  const double z = -(alpha * alpha) / (N * N);
  double term = 1.0;
  double hyp = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= (s + k) * (s - 0.5 + k) / ((s + 0.5 + k) * (k + 1.0)) * z;
    hyp += term;
    if (std::fabs(term) < 1e-18 * std::fabs(hyp)) break;
  }
  const double integral = std::pow(N, 1.0 - 2.0 * s) / (2.0 * s - 1.0) * hyp;

  const double q = N * N + alpha * alpha;
  const double d1 = -2.0 * s * N * std::pow(q, -s - 1.0);
  const double d3 = 12.0 * s * (s + 1.0) * N * std::pow(q, -s - 2.0) -
                    8.0 * s * (s + 1.0) * (s + 2.0) * N * N * N * std::pow(q, -s - 3.0);
  const double tail = integral + 0.5 * f(N) - d1 / 12.0 + d3 / 720.0;
  return std::log(partial + tail);
}

}  // namespace

std::string to_string(CovarianceFamily family) {
  switch (family) {
    case CovarianceFamily::NegativeBinomial: return "nb";
    case CovarianceFamily::SpectralMatern: return "sm";
    case CovarianceFamily::GeneralizedF: return "f";
    case CovarianceFamily::Chentsov: return "chentsov";
    case CovarianceFamily::Exponential: return "exp";
    case CovarianceFamily::Finite: return "finite";
  }
  return "unknown";
}

CovarianceSpec CovarianceSpec::negative_binomial(double delta, int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::NegativeBinomial;
  s.delta = delta;
  s.d = d;
  return s;
}

CovarianceSpec CovarianceSpec::spectral_matern(double alpha, double nu, int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::SpectralMatern;
  s.alpha = alpha;
  s.nu = nu;
  s.d = d;
  return s;
}

CovarianceSpec CovarianceSpec::generalized_f(double alpha, double nu, double tau, int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::GeneralizedF;
  s.alpha = alpha;
  s.nu = nu;
  s.tau = tau;
  s.d = d;
  return s;
}

CovarianceSpec CovarianceSpec::chentsov(int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::Chentsov;
  s.d = d;
  return s;
}

CovarianceSpec CovarianceSpec::exponential(double nu, int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::Exponential;
  s.nu = nu;
  s.d = d;
  return s;
}

CovarianceSpec CovarianceSpec::finite(std::vector<double> coefficients, int d) {
  CovarianceSpec s;
  s.family = CovarianceFamily::Finite;
  s.coefficients = std::move(coefficients);
  s.d = d;
  return s;
}

std::string CovarianceSpec::describe() const {
  std::ostringstream os;
  os << to_string(family);
  switch (family) {
    case CovarianceFamily::NegativeBinomial: os << " delta=" << detail::shortest(delta); break;
    case CovarianceFamily::SpectralMatern: os << " alpha=" << detail::shortest(alpha) << " nu=" << detail::shortest(nu); break;
    case CovarianceFamily::GeneralizedF:
      os << " alpha=" << detail::shortest(alpha) << " nu=" << detail::shortest(nu) << " tau=" << detail::shortest(tau);
      break;
    case CovarianceFamily::Chentsov: break;
    case CovarianceFamily::Exponential: os << " nu=" << detail::shortest(nu); break;
    case CovarianceFamily::Finite:
      os << " b=";
      for (std::size_t i = 0; i < coefficients.size(); ++i) {
        os << (i ? "," : "") << detail::shortest(coefficients[i]);
      }
      break;
  }
  os << " d=" << d;
  return os.str();
}

std::vector<std::string> validate(const CovarianceSpec& spec) {
  std::vector<std::string> v;
  if (spec.d < 1) v.emplace_back("d ≥ 1");
  switch (spec.family) {
    case CovarianceFamily::NegativeBinomial:
      if (!(spec.delta > 0.0 && spec.delta < 1.0)) v.emplace_back("δ ∈ ]0,1[");
      if (spec.d != 2) v.emplace_back("d = 2");
      break;
    case CovarianceFamily::SpectralMatern:
      if (!(spec.alpha > 0.0)) v.emplace_back("α > 0");
      if (!(spec.nu > 0.0)) v.emplace_back("ν > 0");
      if (spec.d != 2) v.emplace_back("d = 2");
      break;
    case CovarianceFamily::GeneralizedF:
      if (!(spec.alpha > 0.0)) v.emplace_back("α > 0");
      if (!(spec.nu > 0.0)) v.emplace_back("ν > 0");
      if (!(spec.tau > 0.0)) v.emplace_back("τ > 0");
      if (spec.d >= 1 && !(spec.nu > spec.d - 2)) v.emplace_back("ν > d − 2");
      break;
    case CovarianceFamily::Chentsov:
      if (spec.d < 2) v.emplace_back("d ≥ 2");
      break;
    case CovarianceFamily::Exponential:
      if (!(spec.nu > 0.0)) v.emplace_back("ν > 0");
      if (spec.d < 2) v.emplace_back("d ≥ 2");
      break;
    case CovarianceFamily::Finite: {
      bool any_positive = false;
      bool all_valid = true;
      for (double b : spec.coefficients) {
        if (!(std::isfinite(b) && b >= 0.0)) all_valid = false;
        if (b > 0.0) any_positive = true;
      }
      if (!all_valid) v.emplace_back("b_n ≥ 0");
      if (!any_positive) v.emplace_back("some b_n > 0");
      break;
    }
  }
  return v;
}

struct CovarianceModel::State {
  CovarianceSpec spec;
  double lambda = 0.0;  // (d - 1) / 2

  // NegativeBinomial
  double log_one_minus_delta = 0.0;
  double log_delta = 0.0;
  // SpectralMatern
  double sm_log_normalizer = 0.0;
  // GeneralizedF
  double f_log_prefactor = 0.0;
  // Chentsov: log b_{2m+1}
  std::vector<double> chentsov_log;
  // Exponential
  std::vector<double> exp_log_gamma_sq;  // log |Gamma((m + i nu)/2)|^2
  double exp_log_c_even = 0.0;
  double exp_log_c_odd = 0.0;
  double exp_log_prefactor = 0.0;  // log Gamma(lambda) + log Gamma(lambda + 1)

  // Series representation used when K has no closed form: weights
  // w_n = b_n G_n(1) so that K(theta) = sum_n w_n g_n(cos theta). Built on
  // first use; slowly decaying families need millions of terms.
  mutable std::once_flag series_once;
  mutable std::vector<double> series_weights;
  mutable double series_tail = 0.0;
  mutable double variance = 1.0;

  double log_coeff(std::int64_t n) const;
  double exponential_log_coeff(std::int64_t n) const;
  void build_series() const;
  const State& with_series() const {
    std::call_once(series_once, [this] { build_series(); });
    return *this;
  }
};

double CovarianceModel::State::exponential_log_coeff(std::int64_t n) const {
  const std::int64_t top = n + spec.d + 1;
  const double log_c = (n % 2 == 0) ? exp_log_c_even : exp_log_c_odd;
  const double head = log_c + std::log(lambda + static_cast<double>(n)) + exp_log_prefactor;
  if (top < static_cast<std::int64_t>(exp_log_gamma_sq.size())) {
    return head + exp_log_gamma_sq[static_cast<std::size_t>(n)] -
           exp_log_gamma_sq[static_cast<std::size_t>(top)];
  }
  return closed_form::exponential_log_coeff_direct(n, spec.nu, spec.d);
}

double CovarianceModel::State::log_coeff(std::int64_t n) const {
  const double nn = static_cast<double>(n);
  switch (spec.family) {
    case CovarianceFamily::NegativeBinomial:
      return log_one_minus_delta + nn * log_delta;
    case CovarianceFamily::SpectralMatern:
      return -(spec.nu + 0.5) * std::log(nn * nn + spec.alpha * spec.alpha) - sm_log_normalizer;
    case CovarianceFamily::GeneralizedF:
      return f_log_prefactor + log_pochhammer(spec.alpha, n) + log_pochhammer(spec.tau, n) -
             log_pochhammer(spec.alpha + spec.nu + spec.tau, n) - std::lgamma(nn + 1.0);
    case CovarianceFamily::Chentsov: {
      if (n % 2 == 0) return kNegInf;
      const std::int64_t m = (n - 1) / 2;
      if (m < static_cast<std::int64_t>(chentsov_log.size())) {
        return chentsov_log[static_cast<std::size_t>(m)];
      }
      return closed_form::chentsov_log_coeff_direct(n, spec.d);
    }
    case CovarianceFamily::Exponential:
      return exponential_log_coeff(n);
    case CovarianceFamily::Finite: {
      if (n >= static_cast<std::int64_t>(spec.coefficients.size())) return kNegInf;
      const double b = spec.coefficients[static_cast<std::size_t>(n)];
      return b > 0.0 ? std::log(b) : kNegInf;
    }
  }
  return kNegInf;
}

void CovarianceModel::State::build_series() const {
  const int d = spec.d;
  auto log_weight = [&](std::int64_t n) {
    const double lb = log_coeff(n);
    if (d == 1 || lb == kNegInf) return lb;
    return lb + log_gegenbauer_at_one(lambda, n);
  };

  std::int64_t terms = 0;
  double tail = 0.0;
  switch (spec.family) {
    case CovarianceFamily::Finite:
      terms = static_cast<std::int64_t>(spec.coefficients.size());
      tail = 0.0;
      break;
    case CovarianceFamily::SpectralMatern: {
      // sum_{n>N} b_n <= int_N^inf x^{-2s} dx / S = N^{1-2s} / ((2s - 1) S)
      const double s = spec.nu + 0.5;
      const double log_scale = -std::log(2.0 * s - 1.0) - sm_log_normalizer;
      const double log_n = (std::log(kSeriesTailTarget) - log_scale) / (1.0 - 2.0 * s);
      const double wanted = std::ceil(std::exp(std::min(log_n, std::log(double(kMaxSeriesTerms)))));
      terms = std::clamp<std::int64_t>(static_cast<std::int64_t>(wanted), kMinSeriesTerms,
                                       kMaxSeriesTerms);
      tail = std::exp(log_scale + (1.0 - 2.0 * s) * std::log(static_cast<double>(terms)));
      break;
    }
    case CovarianceFamily::GeneralizedF: {
      // w_n ~ c n^{-e}; the remainder after N terms is ~ w_N N / (e - 1).
      const double e = spec.nu + 1.0 - std::max(0, d - 2);
      std::int64_t n = kMinSeriesTerms;
      for (;; n = std::min(2 * n, kMaxSeriesTerms)) {
        tail = std::exp(log_weight(n)) * static_cast<double>(n) / (e - 1.0);
        if (tail < kSeriesTailTarget || n == kMaxSeriesTerms) break;
      }
      // Refine by bisection between n / 2 and n.
      std::int64_t lo = std::max(kMinSeriesTerms, n / 2);
      std::int64_t hi = n;
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (std::exp(log_weight(mid)) * static_cast<double>(mid) / (e - 1.0) < kSeriesTailTarget) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      terms = hi;
      tail = std::exp(log_weight(hi)) * static_cast<double>(hi) / (e - 1.0);
      break;
    }
    default:
      return;
  }

  series_weights.resize(static_cast<std::size_t>(terms));
  for (std::int64_t n = 0; n < terms; ++n) {
    series_weights[static_cast<std::size_t>(n)] = std::exp(log_weight(n));
  }
  series_tail = tail;
  // Smallest terms first for the variance.
  double sum = 0.0;
  for (auto it = series_weights.rbegin(); it != series_weights.rend(); ++it) sum += *it;
  variance = sum;
}

CovarianceModel::CovarianceModel(CovarianceSpec spec) {
  if (auto violations = validate(spec); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  auto st = std::make_shared<State>();
  st->spec = std::move(spec);
  const CovarianceSpec& s = st->spec;
  st->lambda = 0.5 * (s.d - 1);
  const double lambda = st->lambda;

  switch (s.family) {
    case CovarianceFamily::NegativeBinomial:
      st->log_one_minus_delta = std::log1p(-s.delta);
      st->log_delta = std::log(s.delta);
      break;
    case CovarianceFamily::SpectralMatern:
      st->sm_log_normalizer = spectral_matern_log_normalizer(s.alpha, s.nu);
      break;
    case CovarianceFamily::GeneralizedF:
      st->f_log_prefactor = log_beta(s.alpha, s.nu + s.tau) - log_beta(s.alpha, s.nu);
      break;
    case CovarianceFamily::Chentsov:
      st->chentsov_log = closed_form::chentsov_log_coeffs_by_induction(kChentsovInductionTerms, s.d);
      break;
    case CovarianceFamily::Exponential: {
      st->exp_log_gamma_sq =
          closed_form::log_abs_gamma_half_sq_by_induction(kExponentialInductionTerms + s.d + 1, s.nu);
      // C(nu, k) with e^{-pi nu/2} sinh(pi nu/2) = (1 - e^{-pi nu})/2 and
      // e^{-pi nu/2} cosh(pi nu/2) = (1 + e^{-pi nu})/2.
      const double base = std::log(s.nu) - kLog2Pi;
      st->exp_log_c_even = base + std::log(-std::expm1(-M_PI * s.nu) / 2.0);
      st->exp_log_c_odd = base + std::log1p(std::exp(-M_PI * s.nu)) - std::log(2.0);
      st->exp_log_prefactor = std::lgamma(lambda) + std::lgamma(lambda + 1.0);
      break;
    }
    case CovarianceFamily::Finite:
      break;
  }
  state_ = std::move(st);
}

const CovarianceSpec& CovarianceModel::spec() const noexcept { return state_->spec; }
int CovarianceModel::dimension() const noexcept { return state_->spec.d; }
CovarianceFamily CovarianceModel::family() const noexcept { return state_->spec.family; }

double CovarianceModel::log_schoenberg_coeff(std::int64_t n) const {
  if (n < 0) throw DomainError("degree must be nonnegative");
  return state_->log_coeff(n);
}

double CovarianceModel::schoenberg_coeff(std::int64_t n) const {
  return std::exp(log_schoenberg_coeff(n));
}

CovarianceValue CovarianceModel::covariance_eval(double theta) const {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw DomainError("geodesic distance must lie in [0, pi]");
  }
  const State& st = *state_;
  const CovarianceSpec& s = st.spec;
  switch (s.family) {
    case CovarianceFamily::NegativeBinomial:
      return {(1.0 - s.delta) / std::sqrt(1.0 + s.delta * s.delta - 2.0 * s.delta * std::cos(theta)),
              false, 0, 0.0};
    case CovarianceFamily::Chentsov:
      return {1.0 - 2.0 * theta / M_PI, false, 0, 0.0};
    case CovarianceFamily::Exponential:
      return {std::exp(-s.nu * theta), false, 0, 0.0};
    default:
      break;
  }

  const auto& w = st.with_series().series_weights;
  const auto terms = static_cast<std::int64_t>(w.size());
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  if (s.d == 1) {
    for (std::int64_t n = 0; n < terms; ++n) {
      add(w[static_cast<std::size_t>(n)] * std::cos(static_cast<double>(n) * theta));
    }
  } else {
    const double x = std::cos(theta);
    double prev2 = 1.0;
    double prev = x;
    for (std::int64_t n = 0; n < terms; ++n) {
      double gn;
      if (n == 0) {
        gn = 1.0;
      } else if (n == 1) {
        gn = x;
      } else {
        const double nn = static_cast<double>(n);
        gn = 2.0 * (nn + st.lambda - 1.0) / (nn + 2.0 * st.lambda - 1.0) * x * prev -
             (nn - 1.0) / (nn + 2.0 * st.lambda - 1.0) * prev2;
        prev2 = prev;
        prev = gn;
      }
      add(w[static_cast<std::size_t>(n)] * gn);
    }
  }
  return {sum, true, terms, st.series_tail};
}

double CovarianceModel::variance() const { return state_->with_series().variance; }

DecayProfile CovarianceModel::decay() const {
  const CovarianceSpec& s = state_->spec;
  switch (s.family) {
    case CovarianceFamily::NegativeBinomial:
      return {CoefficientDecay::Geometric, s.delta, -1, false};
    case CovarianceFamily::SpectralMatern:
      return {CoefficientDecay::Polynomial, 2.0 * s.nu + 1.0, -1, false};
    case CovarianceFamily::GeneralizedF:
      return {CoefficientDecay::Polynomial, s.nu + 1.0, -1, false};
    case CovarianceFamily::Chentsov:
      return {CoefficientDecay::Polynomial, static_cast<double>(s.d), -1, true};
    case CovarianceFamily::Exponential:
      return {CoefficientDecay::Polynomial, static_cast<double>(s.d), -1, false};
    case CovarianceFamily::Finite: {
      std::int64_t last = -1;
      for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        if (s.coefficients[i] > 0.0) last = static_cast<std::int64_t>(i);
      }
      return {CoefficientDecay::FiniteSupport, 0.0, last, false};
    }
  }
  return {CoefficientDecay::FiniteSupport, 0.0, -1, false};
}

namespace closed_form {

double chentsov_log_coeff_direct(std::int64_t n, int d) {
  if (d < 2) throw DomainError("Chentsov coefficients are available for d >= 2 only");
  if (n < 0) throw DomainError("degree must be nonnegative");
  if (n % 2 == 0) return kNegInf;
  const double lambda = 0.5 * (d - 1);
  const double m = static_cast<double>((n - 1) / 2);
  return std::log(lambda + 2.0 * m + 1.0) + std::lgamma(lambda) + std::lgamma(lambda + 1.0) -
         2.0 * kLogPi + 2.0 * std::lgamma(m + 0.5) - 2.0 * std::lgamma(lambda + m + 1.5);
}

std::vector<double> chentsov_log_coeffs_by_induction(std::int64_t max_m, int d) {
  if (d < 2) throw DomainError("Chentsov coefficients are available for d >= 2 only");
  const double lambda = 0.5 * (d - 1);
  std::vector<double> out(static_cast<std::size_t>(max_m) + 1);
  out[0] = std::lgamma(lambda) + std::lgamma(lambda + 2.0) - kLogPi -
           2.0 * std::lgamma(lambda + 1.5);
  for (std::int64_t m = 1; m <= max_m; ++m) {
    const double mm = static_cast<double>(m);
    out[static_cast<std::size_t>(m)] =
        out[static_cast<std::size_t>(m - 1)] + std::log(lambda + 2.0 * mm + 1.0) -
        std::log(lambda + 2.0 * mm - 1.0) + 2.0 * std::log(mm - 0.5) -
        2.0 * std::log(lambda + mm + 0.5);
  }
  return out;
}

std::vector<double> log_abs_gamma_half_sq_by_induction(std::int64_t max_m, double nu) {
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(max_m, 1)) + 1);
  const double x = M_PI * nu / 2.0;
  out[0] = kLog2Pi - std::log(nu) - log_sinh(x);
  out[1] = kLogPi - log_cosh(x);
  for (std::size_t m = 2; m < out.size(); ++m) {
    const double k = static_cast<double>(m) - 2.0;
    out[m] = out[m - 2] + std::log((k * k + nu * nu) / 4.0);
  }
  out.resize(static_cast<std::size_t>(max_m) + 1);
  return out;
}

double log_abs_gamma_sq(double x, double y) {
  if (x <= 0.0 && y == 0.0 && std::floor(x) == x) {
    throw DomainError("gamma function pole");
  }
  // |Gamma(z)|^2 = |Gamma(z + 1)|^2 / |z|^2 until Re z is large enough.
  double shift = 0.0;
  while (x < 15.0) {
    shift += std::log(x * x + y * y);
    x += 1.0;
  }
  const std::complex<double> z(x, y);
  const std::complex<double> zi = 1.0 / z;
  const std::complex<double> zi2 = zi * zi;
  const std::complex<double> series =
      zi * (1.0 / 12.0 +
            zi2 * (-1.0 / 360.0 + zi2 * (1.0 / 1260.0 + zi2 * (-1.0 / 1680.0 + zi2 * (1.0 / 1188.0)))));
  const std::complex<double> lg = (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + series;
  return 2.0 * lg.real() - shift;
}

double exponential_log_coeff_direct(std::int64_t n, double nu, int d) {
  if (d < 2) throw DomainError("exponential coefficients are available for d >= 2 only");
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  if (n < 0) throw DomainError("degree must be nonnegative");
  const double lambda = 0.5 * (d - 1);
  const double nn = static_cast<double>(n);
  const double base = std::log(nu) - kLog2Pi;
  const double log_c = (n % 2 == 0) ? base + std::log(-std::expm1(-M_PI * nu) / 2.0)
                                    : base + std::log1p(std::exp(-M_PI * nu)) - std::log(2.0);
  // Same-parity ratios reduce to a finite product; otherwise go through
  // the Stirling route for both moduli.
  double ratio;
  if ((d + 1) % 2 == 0) {
    ratio = 0.0;
    for (int j = 0; j < (d + 1) / 2; ++j) {
      const double k = nn + 2.0 * j;
      ratio -= std::log((k * k + nu * nu) / 4.0);
    }
  } else {
    ratio = log_abs_gamma_sq(nn / 2.0, nu / 2.0) - log_abs_gamma_sq((nn + d + 1) / 2.0, nu / 2.0);
  }
  return log_c + std::log(lambda + nn) + std::lgamma(lambda) + std::lgamma(lambda + 1.0) + ratio;
}

}  // namespace closed_form

QuadratureResult schoenberg_coeff_quadrature(const std::function<double(double)>& K, std::int64_t n,
                                             int d) {
  if (d < 2) throw DomainError("the inversion formula is implemented for d >= 2");
  if (n < 0) throw DomainError("degree must be nonnegative");
  const double lambda = 0.5 * (d - 1);
  const NormalizedGegenbauer g(lambda);
  const auto integrand = [&](double theta) {
    return g.value(n, std::cos(theta)) * std::pow(std::sin(theta), d - 1) * K(theta);
  };
  // b = G_n(1) / ||G_n||^2 * int g_n(cos t) sin^{d-1} t K(t) dt
  const double scale = std::exp(log_gegenbauer_at_one(lambda, n) - std::log(gegenbauer_norm_sq(d, n)));
  QuadratureTolerance tol;
  tol.relative = 1e-12;
  tol.absolute = 1e-10 / scale;
  const int panels = static_cast<int>(std::min<std::int64_t>(n + 1, 512));
  const QuadratureResult raw = integrate_panels(integrand, 0.0, M_PI, panels, tol);
  return {scale * raw.value, scale * raw.error_estimate};
}

}  // namespace turnarcs
