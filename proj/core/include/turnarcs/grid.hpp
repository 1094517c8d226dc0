#pragma once

#include <istream>
#include <string>
#include <vector>

#include "turnarcs/sphere.hpp"

namespace turnarcs {

enum class GridKind {
  LatLon,    // S^2, n_colat x n_lon face centers
  Slice3,    // S^3 points with fourth coordinate w over an inner lat-lon grid
  SectionD,  // S^d points whose last d - 2 coordinates vanish
  PointList, // explicit points read from a file
};

struct GridSpec {
  GridKind kind = GridKind::LatLon;
  int n_colat = 1;
  int n_lon = 1;
  double w = 0.0;    // Slice3
  int d = 2;         // sphere dimension
  std::string path;  // PointList

  // "latlon:NxM", "slice3:W:NxM", "section:D:NxM" or "points:FILE".
  static GridSpec parse(const std::string& text);
  std::string describe() const;
};

struct Grid {
  PointSet points;
  // Face-center angles per point; empty for point lists.
  std::vector<double> colat;
  std::vector<double> lon;
};

/// Points in row-major order (colatitude outer, longitude inner).
/// Throws ParseError for malformed point files, naming the line.
Grid build_grid(const GridSpec& spec);

/// One point per line, coordinates separated by commas or blanks; blank
/// lines and lines starting with '#' are skipped. The sphere dimension is
/// taken from the first point.
PointSet read_point_list(std::istream& in, const std::string& name = "points");

}  // namespace turnarcs
