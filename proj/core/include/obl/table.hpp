#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "obl/geom.hpp"

namespace obl {

/// 2x2 real matrix, row major.
struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]

  Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  double det() const { return a * d - b * c; }
  Mat2 transposed() const { return {a, c, b, d}; }
  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 rotation(double phi) {
    double cs = std::cos(phi), sn = std::sin(phi);
    return {cs, -sn, sn, cs};
  }
  /// Frobenius norm of (this - o).
  double dist(const Mat2& o) const {
    Mat2 m = *this - o;
    return std::sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
  }
};

/// Support-function data of a tangency query: the support point, its
/// parameter (outward normal angle), curvature radius and unit tangent.
struct TangencyFrame {
  Vec2 point;
  double theta = 0.0;
  double rho = 0.0;
  Vec2 unit_tangent;
};

/// Truncated Fourier support function h(t) = h0 + sum_k a_k cos kt + b_k sin kt.
struct SupportFourier {
  double h0 = 1.0;
  std::vector<std::array<double, 2>> coeffs;  // (a_k, b_k), k = 1..K

  double h(double th) const;
  double dh(double th) const;
  double ddh(double th) const;
  double rho(double th) const { return h(th) + ddh(th); }
  int K() const { return static_cast<int>(coeffs.size()); }
};

/// One piece of a piecewise boundary, indexed by the outward normal angle.
/// Arcs and corners cover a normal-angle interval; a straight segment is
/// supported at the single normal angle where its line is the support line.
struct ArcPiece {
  Vec2 center;
  double radius = 0.0;
  double th0 = 0.0, th1 = 0.0;  // outward normal angles, th0 < th1
};
struct CornerPiece {
  Vec2 point;
  double th0 = 0.0, th1 = 0.0;  // normal cone of the corner
};
struct SegmentPiece {
  Vec2 p0, p1;
  double th = 0.0;  // normal angle of the supporting line
};
using Piece = std::variant<ArcPiece, CornerPiece, SegmentPiece>;

struct MapDifferential {
  Mat2 world;    // differential in world coordinates
  Mat2 segment;  // [[-1, -2 rho / r], [0, -1]] in the reflection-segment frame
  double rho = 0.0;
  double r = 0.0;  // half chord length |x y| / 2
  Vec2 e1;         // frame axis along the segment x -> y
};

/// Strictly convex outer billiard table. Either a smooth support-Fourier
/// curve or a piecewise boundary built from circular arcs, corners, and
/// straight segments (convex, pieces ordered by outward normal angle).
class ConvexTable {
 public:
  static ConvexTable support_fourier(double h0,
                                     std::vector<std::array<double, 2>> coeffs);
  static ConvexTable circle(double radius, Vec2 center = {});
  /// Support-Fourier approximation of an axis-aligned ellipse.
  static ConvexTable ellipse(double a, double b, int K = 32);
  static ConvexTable piecewise(std::vector<Piece> pieces);
  /// Square with corners rounded by radius-r arcs; sides stay straight (C^1).
  static ConvexTable rounded_square(double half_side, double corner_radius);
  /// Square whose sides are outward-bulging circular arcs of the given
  /// radius, meeting at four genuine corners (strictly convex, non-smooth).
  static ConvexTable arc_sided_square(double half_side, double side_arc_radius);

  bool is_support_fourier() const;
  const SupportFourier& fourier() const;
  const std::vector<Piece>& pieces() const;

  /// Boundary point at outward normal angle theta.
  Vec2 boundary_point(double theta) const;
  double support(double theta) const;
  double curvature_radius(double theta) const;

  /// The right tangency from an exterior point: the support point P such that
  /// the table lies to the left of the oriented line x -> P.
  TangencyFrame right_tangency(Vec2 x) const;

  /// Outer billiard map: reflect x in the right support point.
  Vec2 outer_map(Vec2 x) const;
  /// Inverse map: reflect in the left support point.
  Vec2 outer_map_inverse(Vec2 x) const;

  MapDifferential outer_map_diff(Vec2 x) const;
  /// Differential of the inverse map (reflection in the left tangency);
  /// segment-frame matrix [[-1, +2 rho / r], [0, -1]].
  MapDifferential outer_map_inverse_diff(Vec2 x) const;

  /// Characteristic length for tolerances.
  double scale() const { return scale_; }

  /// Apply rotation, uniform scaling and translation: h'(t) = s h(t - phi) + c.n(t).
  ConvexTable similarity_transformed(double phi, double s, Vec2 c) const;

 private:
  ConvexTable() = default;
  void validate_fourier();
  void validate_pieces();
  TangencyFrame left_tangency(Vec2 x) const;

  std::variant<SupportFourier, std::vector<Piece>> rep_;
  double scale_ = 1.0;
};

/// cot(alpha) + cot(beta) - 2 rho / r; zero iff the mirror relation between
/// incoming and outgoing lines holds at a reflection.
double mirror_residual(double alpha, double beta, double rho, double r);

}  // namespace obl
