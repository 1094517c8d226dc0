#include "turnarcs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "turnarcs/errors.hpp"

namespace turnarcs {

namespace {

constexpr unsigned kMaxDepth = 12;

QuadratureResult integrate_nodes(const std::function<double(double)>& f,
                                 const std::vector<double>& nodes, QuadratureTolerance tol) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  double error = 0.0;
  // Each panel aims at the relative tolerance of its own L1 mass; a tiny
  // floor keeps panels where the integrand vanishes from recursing forever.
  const double panel_tol = std::max(tol.relative, 1e-12);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double panel_error = 0.0;
    double l1 = 0.0;
    total += gauss_kronrod<double, 31>::integrate(f, nodes[i], nodes[i + 1], kMaxDepth,
                                                  panel_tol, &panel_error, &l1);
    error += panel_error;
  }
  if (!(error <= std::max(tol.absolute, tol.relative * std::fabs(total)))) {
    throw QuadratureError("adaptive quadrature did not converge", error);
  }
  return {total, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureTolerance tol, std::span<const double> breakpoints) {
  std::vector<double> nodes;
  nodes.reserve(breakpoints.size() + 2);
  nodes.push_back(a);
  for (double x : breakpoints) {
    if (x > nodes.back() && x < b) nodes.push_back(x);
  }
  nodes.push_back(b);
  return integrate_nodes(f, nodes, tol);
}

QuadratureResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                                  int panels, QuadratureTolerance tol) {
  std::vector<double> nodes(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) {
    nodes[static_cast<std::size_t>(i)] = a + (b - a) * i / panels;
  }
  nodes.back() = b;
  return integrate_nodes(f, nodes, tol);
}

}  // namespace turnarcs
