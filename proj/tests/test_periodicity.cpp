#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "obl/periodicity.hpp"
#include "test_helpers.hpp"

using namespace obl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("find_periodic on circle and ellipse") {
  ConvexTable circle = ConvexTable::circle(1.0);
  OrbitReport r31 = find_periodic(circle, 3, 1, {2.1, 0});
  CHECK(r31.closure_error < 1e-9);
  for (const Vec2& p : r31.points)
    CHECK(norm(p) == doctest::Approx(2.0).epsilon(1e-8));

  OrbitReport r52 = find_periodic(circle, 5, 2, {3.3, 0});
  CHECK(r52.closure_error < 1e-9);
  for (const Vec2& p : r52.points)
    CHECK(norm(p) ==
          doctest::Approx(1.0 / std::cos(2 * kPi / 5)).epsilon(1e-8));

  CHECK_THROWS_AS(find_periodic(circle, 4, 2, {2.0, 0}), DomainError);

  // Affine image: the ellipse orbit is the mapped circle orbit.
  double a = 1.3, b = 0.8;
  ConvexTable ell = ConvexTable::ellipse(a, b);
  OrbitReport re = find_periodic(ell, 3, 1, {2.0 * a, 0});
  CHECK(re.closure_error < 1e-8);
  for (const Vec2& p : re.points) {
    Vec2 back{p.x / a, p.y / b};
    CHECK(norm(back) == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("compose_maps equals iterated map with unit determinant") {
  ConvexTable circle = ConvexTable::circle(1.0);
  std::vector<ConvexTable> three(3, circle);
  Vec2 x{2.4, 0.3};
  auto [y, J] = compose_maps(three, x);
  Vec2 z = x;
  for (int i = 0; i < 3; ++i) z = circle.outer_map(z);
  CHECK(norm(y - z) < 1e-12);
  CHECK(J.det() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("expr1 and expr residuals") {
  double s3 = std::sqrt(3.0);
  Polygon tri({{0, 0}, {1, 0}, {0.5, s3 / 2}});
  CHECK(expr1_residual(tri, 1.0 / s3) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(expr1_residual(tri, 1.0) ==
        doctest::Approx(s3 / 4 - 0.25).epsilon(1e-12));
  CHECK_THROWS_AS(expr1_residual(Polygon({{0, 0}, {1, 0}, {2, 0}}), 1.0),
                  DegeneracyError);

  // Homogeneity: scaling the triangle by lambda with rho2 fixed scales the
  // area term by lambda^2 and the chord term by lambda^3.
  double lam = 1.7, rho2 = 0.9;
  std::vector<Vec2> sc;
  for (const Vec2& v : tri.vertices()) sc.push_back(lam * v);
  Polygon tril(sc);
  double A = 0.5 * std::abs(area2(tri));
  double r2 = 0.5;
  CHECK(expr1_residual(tril, rho2) ==
        doctest::Approx(lam * lam * A * rho2 - lam * lam * lam * 2 * r2 * r2 * r2)
            .epsilon(1e-12));

  // Equivalence with the cotangent form on random triangles.
  std::mt19937 rng(131);
  for (int it = 0; it < 20; ++it) {
    Polygon T = oblt::random_polygon(3, rng);
    double A2 = 0.5 * std::abs(area2(T));
    double rr = 0.5 * norm(T[0] - T[2]);
    double rho = 2 * rr * rr * rr / A2;  // zero of expr1
    CHECK(std::abs(expr1_residual(T, rho)) < 1e-10);
    CHECK(std::abs(expr_residual(T, rho)) < 1e-10);
  }
}

TEST_CASE("three-circle identity example") {
  IdentityExample ex = identity_example();
  CHECK(ex.cycle_error < 1e-10);
  CHECK(ex.diff_error < 1e-6);
  CHECK(ex.composed_diff.det() == doctest::Approx(1.0).epsilon(1e-10));

  // Frame-matrix product for the equilateral configuration: all angles pi/3,
  // all curvature radii 1/sqrt(3), all half-chords 1/2.
  double s3 = std::sqrt(3.0);
  Mat2 P = frame_matrix_product({kPi / 3, kPi / 3, kPi / 3},
                                {1 / s3, 1 / s3, 1 / s3}, {0.5, 0.5, 0.5});
  CHECK(P.dist(Mat2::identity()) < 1e-10);
}

TEST_CASE("obstruction demo") {
  ObstructionReport rep = obstruction_demo(21, 0.05);
  CHECK(rep.symmetric_configuration);
  double mid = rep.residuals[10];
  CHECK(std::abs(mid) < 1e-12);
  CHECK(std::abs(rep.residuals.front()) > 1e-3);
  CHECK(std::abs(rep.residuals.back()) > 1e-3);
  CHECK(rep.slope_at_zero == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("arc-sided square has an open set of 4-periodic points") {
  ConvexTable sq = ConvexTable::arc_sided_square(1.0, 3.0);
  RoundedSquareReport rep = rounded_square_demo(sq, {2.5, 0}, 0.1, 15);
  CHECK(rep.fraction == 1.0);
  CHECK(rep.max_error < 1e-9);

  // A disk crossing the singular diagonals loses full periodicity.
  RoundedSquareReport big = rounded_square_demo(sq, {2.5, 0}, 2.0, 15);
  CHECK(big.fraction < 1.0);

  // Smooth tables admit no such open set around their 4-periodic orbit.
  ConvexTable circle = ConvexTable::circle(1.0);
  double d4 = 1.0 / std::cos(kPi / 4);
  RoundedSquareReport smooth = rounded_square_demo(circle, {d4, 0}, 0.05, 15);
  CHECK(smooth.fraction < 1.0);
}

TEST_CASE("family areas are constant") {
  ConvexTable circle = ConvexTable::circle(1.0);
  double a0 = find_periodic(circle, 4, 1, {1.5, 0}).circumscribed_area2;
  for (double phi : {0.3, 1.1, 2.0}) {
    Vec2 seed{1.5 * std::cos(phi), 1.5 * std::sin(phi)};
    OrbitReport rep = find_periodic(circle, 4, 1, seed);
    CHECK(rep.circumscribed_area2 == doctest::Approx(a0).epsilon(1e-8));
  }
}
