#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "obl/json_io.hpp"
#include "obl/svg.hpp"
#include "test_helpers.hpp"

using namespace obl;

TEST_CASE("json round trips") {
  Vec2 v{1.25, -3.5};
  CHECK(norm(vec2_from_json(to_json(v)) - v) == 0.0);

  std::mt19937 rng(211);
  Polygon Z = oblt::random_polygon(5, rng);
  Polygon Z2 = polygon_from_json(to_json(Z));
  REQUIRE(Z2.n() == Z.n());
  for (long i = 0; i < Z.n(); ++i) CHECK(norm(Z2[i] - Z[i]) == 0.0);

  ConvexTable smooth = oblt::random_table(rng);
  ConvexTable smooth2 = table_from_json(to_json(smooth));
  for (double th : {0.0, 0.7, 2.9, 5.5}) {
    CHECK(norm(smooth2.boundary_point(th) - smooth.boundary_point(th)) < 1e-15);
    CHECK(smooth2.curvature_radius(th) ==
          doctest::Approx(smooth.curvature_radius(th)).epsilon(1e-14));
  }

  ConvexTable arcs = ConvexTable::arc_sided_square(1.0, 3.0);
  ConvexTable arcs2 = table_from_json(to_json(arcs));
  for (double th : {0.2, 1.5, 3.0, 4.9})
    CHECK(norm(arcs2.boundary_point(th) - arcs.boundary_point(th)) < 1e-15);

  EquivariantCurve c = EquivariantCurve::circular()
                           .with_coeff(2, {0.05, -0.02})
                           .with_coeff(-2, {0.01, 0.03});
  EquivariantCurve c2 = curve_from_json(to_json(c));
  for (double t : {0.0, 1.1, 4.2}) CHECK(norm(c2.u(t) - c.u(t)) < 1e-15);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(vec2_from_json(json::parse("[1]")), Error);
  CHECK_THROWS_AS(polygon_from_json(json::parse("{\"vertices\":3}")), Error);
  CHECK_THROWS_AS(table_from_json(json::parse("{\"kind\":\"nope\"}")), Error);
  CHECK_THROWS_AS(curve_from_json(json::parse("{}")), Error);
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), Error);
}

TEST_CASE("json file round trip") {
  std::string path = "/tmp/obl_test_io.json";
  std::mt19937 rng(223);
  Polygon Z = oblt::random_polygon(4, rng);
  save_json_file(path, to_json(Z));
  Polygon back = polygon_from_json(load_json_file(path));
  for (long i = 0; i < Z.n(); ++i) CHECK(norm(back[i] - Z[i]) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("svg writer produces a well-formed document") {
  std::string path = "/tmp/obl_test_io.svg";
  SvgCanvas canvas;
  canvas.table_outline(ConvexTable::circle(1.0), "#336699");
  canvas.polyline({{2, 0}, {-1, 1.7}, {-1, -1.7}}, "#cc3333", 0.02, true);
  canvas.polyline({{0, 0}, {1, 1}}, "#00aa00", 0.02, false);
  canvas.dot({2, 0}, 0.05, "#000000");
  canvas.write(path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
  CHECK(body.find("polyline") != std::string::npos);
  CHECK(body.find("circle") != std::string::npos);
  std::remove(path.c_str());
}
