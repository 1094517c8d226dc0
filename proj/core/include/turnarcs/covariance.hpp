#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "turnarcs/quadrature.hpp"

namespace turnarcs {

enum class CovarianceFamily {
  NegativeBinomial,
  SpectralMatern,
  GeneralizedF,
  Chentsov,
  Exponential,
  // User-supplied finite Schoenberg sequence b_0 ... b_N.
  Finite,
};

std::string to_string(CovarianceFamily family);

// Parameters of a scalar isotropic covariance on S^d. Only the fields of the
// selected family are meaningful:
//   NegativeBinomial: delta          SpectralMatern: alpha, nu
//   GeneralizedF:     alpha, nu, tau Exponential:    nu
//   Chentsov:         (none)         Finite:         coefficients
struct CovarianceSpec {
  CovarianceFamily family = CovarianceFamily::NegativeBinomial;
  int d = 2;
  double delta = 0.0;
  double alpha = 0.0;
  double nu = 0.0;
  double tau = 0.0;
  std::vector<double> coefficients;

  static CovarianceSpec negative_binomial(double delta, int d = 2);
  static CovarianceSpec spectral_matern(double alpha, double nu, int d = 2);
  static CovarianceSpec generalized_f(double alpha, double nu, double tau, int d);
  static CovarianceSpec chentsov(int d);
  static CovarianceSpec exponential(double nu, int d);
  static CovarianceSpec finite(std::vector<double> coefficients, int d);

  // Short provenance string, e.g. "nb delta=0.5 d=2".
  std::string describe() const;
};

/// Empty when the parameters are valid, otherwise one entry per violated constraint.
std::vector<std::string> validate(const CovarianceSpec& spec);

// How the Schoenberg sequence decays, which drives the choice of degree law.
enum class CoefficientDecay {
  FiniteSupport,  // b_n = 0 beyond some degree
  Geometric,      // limsup b_n^{1/n} = rate < 1
  Polynomial,     // b_n = O(n^{-rate})
};

struct DecayProfile {
  CoefficientDecay kind;
  double rate;                 // r for Geometric, theta for Polynomial
  std::int64_t last_degree;    // largest nonzero degree for FiniteSupport, else -1
  bool odd_degrees_only;       // even coefficients vanish identically
};

struct CovarianceValue {
  double value;
  bool series_valued;   // true when evaluated from the truncated Schoenberg series
  std::int64_t terms;   // number of series terms summed (0 for closed forms)
  double tail_bound;    // bound on the neglected series remainder
};

// A validated covariance model. Immutable after construction; copies share
// the precomputed coefficient caches, so it is safe to read concurrently.
class CovarianceModel {
 public:
  // Throws ValidationError listing every violated constraint.
  explicit CovarianceModel(CovarianceSpec spec);

  const CovarianceSpec& spec() const noexcept;
  int dimension() const noexcept;
  CovarianceFamily family() const noexcept;

  /// Schoenberg coefficient b_{n,d} >= 0.
  double schoenberg_coeff(std::int64_t n) const;
  /// log b_{n,d}; -infinity where the coefficient vanishes.
  double log_schoenberg_coeff(std::int64_t n) const;

  /// K(theta) for theta in [0, pi]. Throws DomainError outside.
  CovarianceValue covariance_eval(double theta) const;
  double operator()(double theta) const { return covariance_eval(theta).value; }

  /// K(0).
  double variance() const;

  DecayProfile decay() const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

// Closed-form Schoenberg coefficients exposed for cross-checking.
namespace closed_form {

/// Chentsov b_{n,d} from the gamma-quotient formula, evaluated in log space.
double chentsov_log_coeff_direct(std::int64_t n, int d);
/// Chentsov log b_{1,d}, log b_{3,d}, ... , log b_{2m+1,d} from the
/// induction formula seeded at b_{1,d}. Entry m holds degree 2m + 1.
std::vector<double> chentsov_log_coeffs_by_induction(std::int64_t max_m, int d);

/// log |Gamma((m + i nu) / 2)|^2 for m = 0 ... max_m by the two-step
/// induction from the reflection-formula initial values.
std::vector<double> log_abs_gamma_half_sq_by_induction(std::int64_t max_m, double nu);
/// log |Gamma(x + i y)|^2 from the Stirling series after upward shifting.
double log_abs_gamma_sq(double x, double y);

/// Exponential-covariance log b_{n,d}; uses the Stirling route for the
/// squared gamma moduli.
double exponential_log_coeff_direct(std::int64_t n, double nu, int d);

}  // namespace closed_form

/// b_{n,d} recovered from K by numerical integration against G_n^{(d-1)/2}.
/// This is the independent oracle for every closed-form coefficient.
QuadratureResult schoenberg_coeff_quadrature(const std::function<double(double)>& K,
                                             std::int64_t n, int d);

}  // namespace turnarcs
