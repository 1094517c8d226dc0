#include "turnarcs/realization_io.hpp"

#include <charconv>
#include <sstream>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"

namespace turnarcs {

namespace {

void append_real(std::string& buf, double v) {
  char tmp[32];
  buf.append(tmp, std::to_chars(tmp, tmp + sizeof tmp, v).ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_real(double v) { return detail::shortest(v); }

void write_realization_csv(std::ostream& out, const Realization& r, const Grid& grid,
                           const GridSpec& spec,
                           const std::vector<std::pair<std::string, std::string>>& extra) {
  const int d = r.points.dimension();
  out << "# model: " << r.model << '\n'
      << "# d: " << d << '\n'
      << "# p: " << r.p << '\n'
      << "# L: " << r.waves << '\n'
      << "# seed: " << r.seed << '\n'
      << "# grid: " << spec.describe() << '\n'
      << "# degrees: " << r.degrees << '\n';
  for (const auto& [k, v] : extra) out << "# " << k << ": " << v << '\n';

  const bool angles = !grid.colat.empty();
  const bool slice = spec.kind == GridKind::Slice3;
  std::string buf;
  if (angles) {
    buf = slice ? "colat,lon,w" : "colat,lon";
  } else {
    for (int c = 0; c <= d; ++c) buf += (c ? ",x" : "x") + std::to_string(c);
  }
  for (int c = 1; c <= r.p; ++c) buf += ",z" + std::to_string(c);
  buf += '\n';
  out << buf;

  buf.clear();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (angles) {
      append_real(buf, grid.colat[i]);
      buf += ',';
      append_real(buf, grid.lon[i]);
      if (slice) {
        buf += ',';
        append_real(buf, spec.w);
      }
    } else {
      const auto x = r.points[i];
      for (std::size_t c = 0; c < x.size(); ++c) {
        if (c) buf += ',';
        append_real(buf, x[c]);
      }
    }
    for (int c = 0; c < r.p; ++c) {
      buf += ',';
      append_real(buf, r.value(i, c));
    }
    buf += '\n';
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

const std::string* CsvTable::find(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ParseError("no column named '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon != std::string::npos && colon > 2) {
        t.header.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      }
      continue;
    }
    auto fields = split(line);
    if (t.columns.empty()) {
      t.columns = std::move(fields);
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(t.columns.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + f + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace turnarcs
