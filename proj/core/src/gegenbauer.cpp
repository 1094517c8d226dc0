#include "turnarcs/gegenbauer.hpp"

#include <cmath>
#include <string>

#include "turnarcs/errors.hpp"

namespace turnarcs {

namespace {

void check_order(double lambda, std::int64_t degree) {
  if (!(lambda > 0.0)) {
    throw DomainError("Gegenbauer order lambda must be positive, got " + std::to_string(lambda));
  }
  if (degree < 0) {
    throw DomainError("Gegenbauer degree must be nonnegative");
  }
}

void check_argument(double r) {
  if (!(std::fabs(r) <= 1.0)) {
    throw DomainError("Gegenbauer argument must lie in [-1, 1], got " + std::to_string(r));
  }
}

// One step of the recurrence, in long double so that the scalar and the
// batch entry points share the exact same rounding sequence.
inline long double step(long double lambda, std::int64_t n, long double r, long double prev,
                        long double prev2) {
  const auto nn = static_cast<long double>(n);
  return (2.0L * (nn + lambda - 1.0L) * r * prev - (nn + 2.0L * lambda - 2.0L) * prev2) / nn;
}

}  // namespace

GegenbauerOrder GegenbauerOrder::for_sphere(int d, std::int64_t degree) {
  if (d < 2) {
    throw DomainError("Gegenbauer polynomials are used on S^d for d >= 2 only");
  }
  return {0.5 * (d - 1), degree};
}

double gegenbauer_eval(GegenbauerOrder order, double r) {
  check_order(order.lambda, order.degree);
  check_argument(r);
  const long double lambda = order.lambda;
  const long double x = r;
  if (order.degree == 0) return 1.0;
  long double prev2 = 1.0L;
  long double prev = 2.0L * lambda * x;
  for (std::int64_t n = 2; n <= order.degree; ++n) {
    const long double next = step(lambda, n, x, prev, prev2);
    prev2 = prev;
    prev = next;
  }
  return static_cast<double>(prev);
}

std::vector<double> gegenbauer_eval_table(double lambda, std::int64_t max_degree, double r) {
  check_order(lambda, max_degree);
  check_argument(r);
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1);
  const long double lam = lambda;
  const long double x = r;
  out[0] = 1.0;
  if (max_degree == 0) return out;
  long double prev2 = 1.0L;
  long double prev = 2.0L * lam * x;
  out[1] = static_cast<double>(prev);
  for (std::int64_t n = 2; n <= max_degree; ++n) {
    const long double next = step(lam, n, x, prev, prev2);
    out[static_cast<std::size_t>(n)] = static_cast<double>(next);
    prev2 = prev;
    prev = next;
  }
  return out;
}

double log_gegenbauer_at_one(double lambda, std::int64_t n) {
  check_order(lambda, n);
  const double nn = static_cast<double>(n);
  return std::lgamma(nn + 2.0 * lambda) - std::lgamma(2.0 * lambda) - std::lgamma(nn + 1.0);
}

double gegenbauer_at_one(double lambda, std::int64_t n) {
  return std::exp(log_gegenbauer_at_one(lambda, n));
}

double gegenbauer_norm_sq(int d, std::int64_t n) {
  if (d < 1) throw DomainError("sphere dimension must be at least 1");
  if (n < 0) throw DomainError("degree must be nonnegative");
  const double nn = static_cast<double>(n);
  if (d == 1) {
    if (n == 0) {
      throw DomainError("the d = 1 norm formula 2 pi / n^2 is undefined at n = 0");
    }
    return 2.0 * M_PI / (nn * nn);
  }
  const double half = 0.5 * (d - 1);
  // 2^{3-d} pi / (2n + d - 1) * Gamma(d - 1 + n) / (n! Gamma((d-1)/2)^2)
  const double log_value = (3.0 - d) * std::log(2.0) + std::log(M_PI) - std::log(2.0 * nn + d - 1) +
                           std::lgamma(d - 1.0 + nn) - std::lgamma(nn + 1.0) -
                           2.0 * std::lgamma(half);
  return std::exp(log_value);
}

NormalizedGegenbauer::NormalizedGegenbauer(double lambda) : lambda_(lambda) {
  check_order(lambda, 0);
}

// g_n = A_n r g_{n-1} - B_n g_{n-2}, obtained by dividing the raw recurrence
// through by G_n(1) = (2 lambda)_n / n!.
double NormalizedGegenbauer::forward(std::int64_t n) const {
  const double nn = static_cast<double>(n);
  return 2.0 * (nn + lambda_ - 1.0) / (nn + 2.0 * lambda_ - 1.0);
}

double NormalizedGegenbauer::backward(std::int64_t n) const {
  const double nn = static_cast<double>(n);
  return (nn - 1.0) / (nn + 2.0 * lambda_ - 1.0);
}

void NormalizedGegenbauer::evaluate(std::int64_t degree, std::span<const double> r,
                                    std::span<double> out, std::span<double> scratch_a,
                                    std::span<double> scratch_b) const {
  const std::size_t m = r.size();
  if (degree == 0) {
    for (std::size_t i = 0; i < m; ++i) out[i] = 1.0;
    return;
  }
  if (degree == 1) {
    for (std::size_t i = 0; i < m; ++i) out[i] = r[i];
    return;
  }
  // Three rotating buffers, offset so that the requested degree lands in `out`.
  double* bufs[3] = {scratch_a.data(), scratch_b.data(), out.data()};
  const int shift = static_cast<int>((2 - degree % 3 + 3) % 3);
  auto buf = [&](std::int64_t n) { return bufs[(n + shift) % 3]; };
  double* g0 = buf(0);
  double* g1 = buf(1);
  for (std::size_t i = 0; i < m; ++i) {
    g0[i] = 1.0;
    g1[i] = r[i];
  }
  const double* x = r.data();
  for (std::int64_t n = 2; n <= degree; ++n) {
    const double a = forward(n);
    const double b = backward(n);
    double* __restrict gn = buf(n);
    const double* __restrict gm1 = buf(n - 1);
    const double* __restrict gm2 = buf(n - 2);
    for (std::size_t i = 0; i < m; ++i) {
      gn[i] = a * x[i] * gm1[i] - b * gm2[i];
    }
  }
}

double NormalizedGegenbauer::value(std::int64_t degree, double r) const {
  if (degree == 0) return 1.0;
  double prev2 = 1.0;
  double prev = r;
  for (std::int64_t n = 2; n <= degree; ++n) {
    const double next = forward(n) * r * prev - backward(n) * prev2;
    prev2 = prev;
    prev = next;
  }
  return prev;
}

void NormalizedGegenbauer::table(std::int64_t max_degree, double r, std::span<double> out) const {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = r;
  for (std::int64_t n = 2; n <= max_degree; ++n) {
    const auto k = static_cast<std::size_t>(n);
    out[k] = forward(n) * r * out[k - 1] - backward(n) * out[k - 2];
  }
}

}  // namespace turnarcs
