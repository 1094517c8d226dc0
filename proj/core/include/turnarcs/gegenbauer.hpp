#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace turnarcs {

// Index of a Gegenbauer polynomial G_n^lambda. On the sphere S^d the relevant
// order is lambda = (d - 1) / 2, so lambda > 0 means d >= 2; the circle is
// handled with cosines by the simulator and never reaches this type.
struct GegenbauerOrder {
  double lambda;
  std::int64_t degree;

  static GegenbauerOrder for_sphere(int d, std::int64_t degree);
};

/// G_n^lambda(r) by the three-term recurrence in ascending degree.
/// Throws DomainError when |r| > 1, lambda <= 0 or n < 0.
double gegenbauer_eval(GegenbauerOrder order, double r);

/// All of G_0^lambda(r) ... G_max^lambda(r) from a single recurrence pass.
/// Element k is bit-identical to gegenbauer_eval({lambda, k}, r).
std::vector<double> gegenbauer_eval_table(double lambda, std::int64_t max_degree, double r);

/// G_n^lambda(1) = Gamma(n + 2 lambda) / (Gamma(2 lambda) Gamma(n + 1)).
double gegenbauer_at_one(double lambda, std::int64_t n);
double log_gegenbauer_at_one(double lambda, std::int64_t n);

/// Squared weighted L2 norm of G_n^{(d-1)/2} on [0, pi] with weight sin^{d-1}.
/// d = 1 uses the 2 pi / n^2 branch and so rejects n = 0.
double gegenbauer_norm_sq(int d, std::int64_t n);

// Evaluates the normalized polynomial g_n(r) = G_n^lambda(r) / G_n^lambda(1)
// over a batch of arguments. |g_n| <= 1 on [-1, 1], so this form stays finite
// for degrees and orders where G_n^lambda itself overflows. The coefficients
// for every degree up to the largest requested are cached in the object.
class NormalizedGegenbauer {
 public:
  explicit NormalizedGegenbauer(double lambda);

  double lambda() const noexcept { return lambda_; }

  // out[i] = g_degree(r[i]). r and out may not alias; the scratch buffers
  // are caller-owned so that concurrent callers never share state.
  void evaluate(std::int64_t degree, std::span<const double> r, std::span<double> out,
                std::span<double> scratch_a, std::span<double> scratch_b) const;

  double value(std::int64_t degree, double r) const;

  // g_0(r) ... g_max(r) for a single argument.
  void table(std::int64_t max_degree, double r, std::span<double> out) const;

 private:
  double forward(std::int64_t n) const;
  double backward(std::int64_t n) const;

  double lambda_;
};

}  // namespace turnarcs
