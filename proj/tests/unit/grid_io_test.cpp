#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "turnarcs/errors.hpp"
#include "turnarcs/grid.hpp"
#include "turnarcs/realization_io.hpp"

using namespace turnarcs;

TEST(Grid, SingleFaceCenter) {
  const auto g = build_grid(GridSpec::parse("latlon:1x1"));
  ASSERT_EQ(g.points.size(), 1u);
  EXPECT_NEAR(g.colat[0], std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(g.lon[0], std::numbers::pi, 1e-15);
  EXPECT_NEAR(g.points[0][0], -1.0, 1e-15);
  EXPECT_NEAR(g.points[0][1], 0.0, 1e-15);
  EXPECT_NEAR(g.points[0][2], 0.0, 1e-15);
}

TEST(Grid, Slice3) {
  const auto g = build_grid(GridSpec::parse("slice3:0.75:2x2"));
  ASSERT_EQ(g.points.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto x = g.points[i];
    EXPECT_EQ(x.size(), 4u);
    EXPECT_NEAR(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3], 1.0, 1e-15);
    EXPECT_EQ(x[3], 0.75);
  }
}

TEST(Grid, HighDimensionalSection) {
  const auto g = build_grid(GridSpec::parse("section:256:2x2"));
  ASSERT_EQ(g.points.size(), 4u);
  EXPECT_EQ(g.points.dimension(), 256);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto x = g.points[i];
    ASSERT_EQ(x.size(), 257u);
    for (std::size_t k = 3; k < x.size(); ++k) EXPECT_EQ(x[k], 0.0);
  }
}

TEST(Grid, ParseErrors) {
  EXPECT_THROW(GridSpec::parse("latlon:0x3"), ParseError);
  EXPECT_THROW(GridSpec::parse("hex:3"), ParseError);
  EXPECT_THROW(GridSpec::parse("slice3:1.5:2x2"), ParseError);
}

TEST(PointList, ReadsAndReportsLine) {
  std::istringstream ok("# comment\n0,0,1\n\n1 0 0\n");
  const auto pts = read_point_list(ok);
  EXPECT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts.dimension(), 2);
  std::istringstream bad("0,0,1\n0,1\n");
  try {
    read_point_list(bad, "pts.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("pts.txt:2"), std::string::npos) << e.what();
  }
}

TEST(RealizationCsv, RoundTrip) {
  const GridSpec spec = GridSpec::parse("latlon:3x4");
  const auto grid = build_grid(spec);
  Realization r{grid.points, 1, {}, "nb delta=0.5 d=2", "geometric:0.5", 7, 9};
  for (std::size_t i = 0; i < grid.points.size(); ++i) r.values.push_back(std::sin(1.0 + i) / 3.0);
  std::stringstream ss;
  write_realization_csv(ss, r, grid, spec, {{"note", "x"}});
  const auto t = read_csv(ss);
  EXPECT_EQ(*t.find("model"), "nb delta=0.5 d=2");
  EXPECT_EQ(*t.find("seed"), "9");
  EXPECT_EQ(*t.find("note"), "x");
  ASSERT_EQ(t.rows.size(), 12u);
  const auto z = t.column("z1");
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(t.rows[i][z], r.values[i]);
  EXPECT_THROW(t.column("w"), ParseError);
}

TEST(FormatReal, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) EXPECT_EQ(std::stod(format_real(v)), v);
}
