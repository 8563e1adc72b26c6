#include "obl/periodicity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace obl {

OrbitReport find_periodic(const ConvexTable& table, int n, int k, Vec2 seed,
                          int max_iter) {
  if (n < 2 || k < 1 || std::gcd(n, k) != 1)
    throw DomainError("period and rotation number must be coprime");
  auto iterate = [&](Vec2 x0, Mat2* J) {
    Vec2 x = x0;
    if (J) *J = Mat2::identity();
    for (int i = 0; i < n; ++i) {
      if (J) {
        MapDifferential d = table.outer_map_diff(x);
        *J = d.world * *J;
      }
      x = table.outer_map(x);
    }
    return x;
  };

  Vec2 x = seed;
  double scale = table.scale();
  const double tol = 1e-9 * scale;
  double err = norm(iterate(x, nullptr) - x);
  for (int it = 0; it < max_iter && err >= tol; ++it) {
    Mat2 J;
    Vec2 F = iterate(x, &J) - x;
    // J - I is singular along the 1-parameter family; take the minimum-norm
    // least-squares step.
    Eigen::Matrix2d A;
    A << J.a - 1, J.b, J.c, J.d - 1;
    Eigen::Vector2d b(-F.x, -F.y);
    Eigen::Vector2d s = A.completeOrthogonalDecomposition().solve(b);
    Vec2 step{s(0), s(1)};
    // Damp steps that would jump across the table.
    double cap = 0.5 * scale;
    if (norm(step) > cap) step = step * (cap / norm(step));
    x += step;
    err = norm(iterate(x, nullptr) - x);
  }
  if (err >= tol)
    throw ConvergenceError("periodic orbit search did not converge", {err});

  OrbitReport rep;
  rep.n = n;
  rep.k = k;
  rep.closure_error = err;
  Vec2 y = x;
  for (int i = 0; i < n; ++i) {
    rep.points.push_back(y);
    y = table.outer_map(y);
  }
  rep.circumscribed_area2 = area2(Polygon(rep.points));
  return rep;
}

std::pair<Vec2, Mat2> compose_maps(const std::vector<ConvexTable>& tables, Vec2 x) {
  Mat2 J = Mat2::identity();
  for (const auto& t : tables) {
    MapDifferential d = t.outer_map_diff(x);
    J = d.world * J;
    x = t.outer_map(x);
  }
  return {x, J};
}

double expr1_residual(const Polygon& triangle, double rho2) {
  if (triangle.n() != 3) throw PreconditionError("expected a triangle");
  if (!is_nondegenerate(triangle)) throw DegeneracyError("degenerate triangle");
  double A = 0.5 * std::abs(area2(triangle));
  double r2 = 0.5 * norm(triangle[0] - triangle[2]);
  return A * rho2 - 2.0 * r2 * r2 * r2;
}

double expr_residual(const Polygon& triangle, double rho2) {
  if (triangle.n() != 3) throw PreconditionError("expected a triangle");
  if (!is_nondegenerate(triangle)) throw DegeneracyError("degenerate triangle");
  auto angle_at = [&](long i) {
    Vec2 a = triangle[i + 1] - triangle[i];
    Vec2 b = triangle[i - 1] - triangle[i];
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
  };
  double a1 = angle_at(0), a3 = angle_at(2);
  double r2 = 0.5 * norm(triangle[0] - triangle[2]);
  return 1.0 / std::tan(a1) + 1.0 / std::tan(a3) - rho2 / r2;
}

Mat2 frame_matrix_product(const std::array<double, 3>& alphas,
                          const std::array<double, 3>& rhos,
                          const std::array<double, 3>& rs) {
  auto A = [&](int i) {
    return Mat2{-1.0, -2.0 * rhos[static_cast<std::size_t>(i)] /
                          rs[static_cast<std::size_t>(i)],
                0.0, -1.0};
  };
  auto B = [&](int i) {
    return Mat2::rotation(std::numbers::pi - alphas[static_cast<std::size_t>(i)]);
  };
  return B(0) * A(1) * B(2) * A(0) * B(1) * A(2);
}

IdentityExample identity_example() {
  const double s3 = std::sqrt(3.0);
  Polygon tri({{0, 0}, {1, 0}, {0.5, s3 / 2}});
  double R = 1.0 / s3;
  // D_i is tangent to the side opposite z_i at its midpoint, center on the
  // outward normal, so each table is convex outward as seen from the orbit:
  // T_1(z_2) = z_3, T_2(z_3) = z_1, T_3(z_1) = z_2, each reflection taken in
  // the tangency at the side midpoint (the left-tangency branch).
  auto disk = [&](long i) {
    Vec2 a = tri[i + 1], b = tri[i + 2];
    Vec2 mid = 0.5 * (a + b);
    Vec2 inward = normalized(rot90(b - a));
    return ConvexTable::circle(R, mid - R * inward);
  };
  IdentityExample ex{tri, {disk(2), disk(0), disk(1)}, 0, 0, Mat2::identity()};
  Vec2 y = tri[0];
  Mat2 J = Mat2::identity();
  for (const auto& t : ex.tables) {
    J = t.outer_map_inverse_diff(y).world * J;
    y = t.outer_map_inverse(y);
  }
  ex.cycle_error = norm(y - tri[0]);
  ex.diff_error = J.dist(Mat2::identity());
  ex.composed_diff = J;
  return ex;
}

ObstructionReport obstruction_demo(int n_samples, double half_range) {
  // Slide z1 and z3 of the unit equilateral triangle along their common line
  // keeping the midpoint fixed. The table datum rho_2 = 1/sqrt(3) and the
  // triangle area (base times fixed height) do not change, but r_2 does, so
  // the frozen residual A rho_2 - 2 r_2(s)^3 can vanish only at s = 0.
  const double A0 = std::sqrt(3.0) / 4.0;
  const double rho2 = 1.0 / std::sqrt(3.0);
  auto r2 = [](double s) { return 0.5 - s; };
  auto f = [&](double s) { return A0 * rho2 - 2.0 * std::pow(r2(s), 3); };

  ObstructionReport rep;
  if (n_samples < 3) n_samples = 3;
  for (int i = 0; i < n_samples; ++i) {
    double s = -half_range + 2.0 * half_range * i / (n_samples - 1);
    rep.params.push_back(s);
    rep.residuals.push_back(f(s));
  }
  const double h = 1e-6;
  rep.slope_at_zero = (f(h) - f(-h)) / (2 * h);
  rep.symmetric_configuration = true;  // the base triangle is isoceles about z2
  return rep;
}

RoundedSquareReport rounded_square_demo(const ConvexTable& table, Vec2 center,
                                        double disk_radius, int grid,
                                        double tol) {
  RoundedSquareReport rep;
  rep.center = center;
  rep.disk_radius = disk_radius;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Vec2 off{(2.0 * i / (grid - 1) - 1.0) * disk_radius,
               (2.0 * j / (grid - 1) - 1.0) * disk_radius};
      if (norm(off) > disk_radius) continue;
      Vec2 x = center + off;
      ++rep.tested;
      double err;
      try {
        Vec2 y = x;
        for (int m = 0; m < 4; ++m) y = table.outer_map(y);
        err = norm(y - x);
      } catch (const Error&) {
        err = std::numeric_limits<double>::infinity();
      }
      if (err < tol) ++rep.periodic;
      if (std::isfinite(err)) rep.max_error = std::max(rep.max_error, err);
    }
  }
  rep.fraction = rep.tested ? static_cast<double>(rep.periodic) / rep.tested : 0.0;
  return rep;
}

}  // namespace obl
