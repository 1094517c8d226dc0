#include "turnarcs/grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"

namespace turnarcs {

namespace {

int parse_int(std::string_view s, const std::string& context) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("bad integer in grid '" + context + "'");
  return v;
}

double parse_real(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("bad number in grid '" + context + "'");
  return v;
}

void parse_faces(std::string_view s, const std::string& context, GridSpec& g) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) throw ParseError("grid '" + context + "' needs NxM faces");
  g.n_colat = parse_int(s.substr(0, x), context);
  g.n_lon = parse_int(s.substr(x + 1), context);
  if (g.n_colat < 1 || g.n_lon < 1) throw ParseError("grid '" + context + "' needs at least one face");
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("grid '" + text + "' must look like kind:...");
  const std::string kind = text.substr(0, colon);
  const std::string_view rest = std::string_view(text).substr(colon + 1);
  if (kind == "latlon") {
    g.kind = GridKind::LatLon;
    g.d = 2;
    parse_faces(rest, text, g);
  } else if (kind == "slice3" || kind == "section") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw ParseError("grid '" + text + "' is missing a field");
    parse_faces(rest.substr(c2 + 1), text, g);
    if (kind == "slice3") {
      g.kind = GridKind::Slice3;
      g.d = 3;
      g.w = parse_real(rest.substr(0, c2), text);
      if (!(std::fabs(g.w) < 1.0)) throw ParseError("slice3 needs |w| < 1");
    } else {
      g.kind = GridKind::SectionD;
      g.d = parse_int(rest.substr(0, c2), text);
      if (g.d < 3) throw ParseError("section grids need d >= 3");
    }
  } else if (kind == "points") {
    g.kind = GridKind::PointList;
    g.path = std::string(rest);
    if (g.path.empty()) throw ParseError("points grid needs a file name");
    g.d = 0;  // known after reading
  } else {
    throw ParseError("unknown grid kind '" + kind + "'");
  }
  return g;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  const std::string faces = std::to_string(n_colat) + "x" + std::to_string(n_lon);
  switch (kind) {
    case GridKind::LatLon: os << "latlon:" << faces; break;
    case GridKind::Slice3: os << "slice3:" << detail::shortest(w) << ':' << faces; break;
    case GridKind::SectionD: os << "section:" << d << ':' << faces; break;
    case GridKind::PointList: os << "points:" << path; break;
  }
  return os.str();
}

Grid build_grid(const GridSpec& spec) {
  if (spec.kind == GridKind::PointList) {
    std::ifstream in(spec.path);
    if (!in) throw ParseError("cannot open point file '" + spec.path + "'");
    return Grid{read_point_list(in, spec.path), {}, {}};
  }
  const int d = spec.kind == GridKind::LatLon ? 2 : spec.d;
  const double s = spec.kind == GridKind::Slice3 ? std::sqrt(1.0 - spec.w * spec.w) : 1.0;
  const auto stride = static_cast<std::size_t>(d) + 1;
  const auto count = static_cast<std::size_t>(spec.n_colat) * static_cast<std::size_t>(spec.n_lon);
  std::vector<double> coords(count * stride, 0.0);
  Grid grid{PointSet(d), {}, {}};
  grid.colat.reserve(count);
  grid.lon.reserve(count);
  std::size_t k = 0;
  for (int i = 0; i < spec.n_colat; ++i) {
    const double theta = (i + 0.5) * M_PI / spec.n_colat;
    for (int j = 0; j < spec.n_lon; ++j, ++k) {
      const double phi = (j + 0.5) * 2.0 * M_PI / spec.n_lon;
      double* x = coords.data() + k * stride;
      x[0] = s * std::sin(theta) * std::cos(phi);
      x[1] = s * std::sin(theta) * std::sin(phi);
      x[2] = s * std::cos(theta);
      if (spec.kind == GridKind::Slice3) x[3] = spec.w;
      grid.colat.push_back(theta);
      grid.lon.push_back(phi);
    }
  }
  grid.points = PointSet(d, std::move(coords));
  return grid;
}

PointSet read_point_list(std::istream& in, const std::string& name) {
  std::vector<double> coords;
  std::size_t width = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(name + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
      }
      row.push_back(v);
    }
    if (width == 0) {
      if (row.size() < 2) throw ParseError(name + ":" + std::to_string(lineno) + ": need at least two coordinates");
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected " + std::to_string(width) +
                       " coordinates, got " + std::to_string(row.size()));
    }
    double r = 0.0;
    for (double v : row) r += v * v;
    if (!(std::fabs(std::sqrt(r) - 1.0) <= kUnitNormTolerance)) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": point is not on the unit sphere");
    }
    coords.insert(coords.end(), row.begin(), row.end());
  }
  if (width == 0) throw ParseError(name + ": no points");
  return PointSet(static_cast<int>(width) - 1, std::move(coords));
}

}  // namespace turnarcs
