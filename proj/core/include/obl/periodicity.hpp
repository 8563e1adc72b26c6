#pragma once

#include <array>
#include <utility>
#include <vector>

#include "obl/geom.hpp"
#include "obl/table.hpp"

namespace obl {

/// An n-periodic outer billiard orbit: the circumscribed n-gon (possibly
/// star-shaped for rotation number k > 1).
struct OrbitReport {
  std::vector<Vec2> points;
  int n = 0;
  int k = 0;
  double closure_error = 0.0;
  double circumscribed_area2 = 0.0;
};

/// Newton search for a fixed point of T^n near the seed. Periodic points come
/// in 1-parameter families, so the (analytic) Jacobian of T^n - Id is
/// rank-deficient; the step is the least-squares solution.
OrbitReport find_periodic(const ConvexTable& table, int n, int k, Vec2 seed,
                          int max_iter = 50);

/// Apply the outer maps of the given tables in list order; the differential
/// is the product of the world-frame dT matrices (determinant 1).
std::pair<Vec2, Mat2> compose_maps(const std::vector<ConvexTable>& tables, Vec2 x);

/// A rho_2 - 2 r_2^3, with A the unsigned triangle area and 2 r_2 = |z1 z3|,
/// the side reflected at the table of curvature radius rho_2.
double expr1_residual(const Polygon& triangle, double rho2);

/// Equivalent cotangent form: cot(alpha_1) + cot(alpha_3) - rho_2 / r_2, with
/// alpha_1, alpha_3 the triangle angles at z1 and z3.
double expr_residual(const Polygon& triangle, double rho2);

/// B_1 A_2 B_3 A_1 B_2 A_3 with A_i = [[-1, -2 rho_i / r_i], [0, -1]] and
/// B_i the rotation through pi - alpha_i; equals Id on an open set of fixed
/// points of T_3 T_2 T_1.
Mat2 frame_matrix_product(const std::array<double, 3>& alphas,
                          const std::array<double, 3>& rhos,
                          const std::array<double, 3>& rs);

/// The three-circle configuration whose composed map has identity
/// differential: the unit equilateral triangle z1 z2 z3 and circles of
/// radius 1/sqrt(3) tangent to the sides at their midpoints from outside
/// (convex outward), each reflection taken in the midpoint tangency.
struct IdentityExample {
  Polygon triangle;
  std::vector<ConvexTable> tables;  // in application order: T3, T1, T2
  double cycle_error = 0.0;         // |T2 T1 T3 (z1) - z1|
  double diff_error = 0.0;          // ||d(T2 T1 T3)(z1) - Id||
  Mat2 composed_diff;
};
IdentityExample identity_example();

/// One-parameter family of the 3-periodicity obstruction: z1 and z3 slide
/// along their line keeping the midpoint (and hence the table data rho_2,
/// the triangle area and height) fixed, so only r_2 changes.
struct ObstructionReport {
  std::vector<double> params;
  std::vector<double> residuals;  // frozen-data expr1 residual along the family
  double slope_at_zero = 0.0;
  bool symmetric_configuration = false;
};
ObstructionReport obstruction_demo(int n_samples = 21, double half_range = 0.05);

/// Open set of 4-periodic points of the arc-sided square: every point of a
/// small disk around the seed orbit reflects through the four corners, and
/// the composition of four point reflections is the identity.
struct RoundedSquareReport {
  Vec2 center;
  double disk_radius = 0.0;
  int tested = 0;
  int periodic = 0;
  double fraction = 0.0;
  double max_error = 0.0;
};
RoundedSquareReport rounded_square_demo(const ConvexTable& table, Vec2 center,
                                        double disk_radius, int grid = 20,
                                        double tol = 1e-9);

}  // namespace obl
