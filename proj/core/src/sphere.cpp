#include "turnarcs/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "turnarcs/errors.hpp"

namespace turnarcs {

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("a sphere point needs at least two coordinates");
  const double r = norm(coords_);
  if (!(std::fabs(r - 1.0) <= kUnitNormTolerance)) {
    throw DomainError("point is not on the unit sphere (norm " + std::to_string(r) + ")");
  }
}

SpherePoint SpherePoint::axis(int d, int axis) {
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.at(static_cast<std::size_t>(axis)) = 1.0;
  return SpherePoint(std::move(c));
}

PointSet::PointSet(int d, std::vector<double> coords) : d_(d), coords_(std::move(coords)) {
  if (coords_.size() % stride() != 0) {
    throw DomainError("coordinate buffer is not a whole number of points");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const double r = norm((*this)[i]);
    if (!(std::fabs(r - 1.0) <= kUnitNormTolerance)) {
      throw DomainError("point " + std::to_string(i) + " is not on the unit sphere");
    }
  }
}

void PointSet::push_back(const SpherePoint& x) {
  if (x.dimension() != d_) throw DomainError("point dimension does not match the point set");
  coords_.insert(coords_.end(), x.coords().begin(), x.coords().end());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double geodesic(std::span<const double> x1, std::span<const double> x2) {
  return std::acos(std::clamp(dot(x1, x2), -1.0, 1.0));
}

SpherePoint sample_pole(int d, RandomStream& rng) {
  if (d < 1) throw DomainError("sphere dimension must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  for (;;) {
    for (double& v : c) v = rng.normal();
    const double r = norm(c);
    if (r < 1e-150) continue;
    for (double& v : c) v /= r;
    return SpherePoint(std::move(c));
  }
}

}  // namespace turnarcs
