#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "turnarcs/random.hpp"

namespace turnarcs {

inline constexpr double kUnitNormTolerance = 1e-12;

// A point of the unit sphere S^d, stored as its d + 1 ambient coordinates.
class SpherePoint {
 public:
  // Throws DomainError unless | |x| - 1 | <= kUnitNormTolerance.
  explicit SpherePoint(std::vector<double> coords);

  int dimension() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  // Canonical basis vector e_axis of R^{d+1}.
  static SpherePoint axis(int d, int axis);

 private:
  std::vector<double> coords_;
};

// A contiguous row-major batch of points on S^d.
class PointSet {
 public:
  explicit PointSet(int d) : d_(d) {}
  PointSet(int d, std::vector<double> coords);

  int dimension() const noexcept { return d_; }
  std::size_t stride() const noexcept { return static_cast<std::size_t>(d_) + 1; }
  std::size_t size() const noexcept { return coords_.size() / stride(); }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * stride(), stride()};
  }
  std::span<const double> raw() const noexcept { return coords_; }

  void push_back(const SpherePoint& x);
  void reserve(std::size_t n) { coords_.reserve(n * stride()); }

 private:
  int d_;
  std::vector<double> coords_;
};

/// arccos of the inner product, clamped against rounding to [0, pi].
double geodesic(std::span<const double> x1, std::span<const double> x2);
inline double geodesic(const SpherePoint& x1, const SpherePoint& x2) {
  return geodesic(x1.coords(), x2.coords());
}

double dot(std::span<const double> a, std::span<const double> b);

/// Uniform point on S^d: normalized vector of d + 1 independent standard
/// normals, redrawn when the norm is degenerate.
SpherePoint sample_pole(int d, RandomStream& rng);

}  // namespace turnarcs
