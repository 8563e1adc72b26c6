#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "obl/errors.hpp"

namespace obl {

/// A point or vector in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Cross-product (determinant) of two plane vectors.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }

/// Counterclockwise rotation by 90 degrees.
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  if (n == 0.0) throw DegeneracyError("cannot normalize zero vector");
  return a / n;
}

/// Cyclic tuple of plane points: an element of the configuration space of
/// n-gons with z_i != z_{i+1}. Indices are cyclic everywhere; negative and
/// out-of-range indices wrap around.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> vertices);

  std::size_t size() const { return verts_.size(); }
  long n() const { return static_cast<long>(verts_.size()); }

  /// Cyclic access: any integer index is reduced mod n.
  const Vec2& operator[](long i) const { return verts_[wrap(i)]; }
  Vec2& at_wrapped(long i) { return verts_[wrap(i)]; }

  const std::vector<Vec2>& vertices() const { return verts_; }

  /// Largest pairwise vertex distance; the length scale for tolerances.
  double diameter() const;

  std::size_t wrap(long i) const {
    long n_ = n();
    long r = i % n_;
    return static_cast<std::size_t>(r < 0 ? r + n_ : r);
  }

 private:
  std::vector<Vec2> verts_;
};

/// One velocity vector per vertex: a tangent vector to the configuration space.
using PolyTangent = std::vector<Vec2>;

/// Signed double area: sum of [z_i, z_{i+1}] with cyclic indexing.
double area2(const Polygon& Z);

/// a_i = [z_i - z_{i-1}, z_{i+1} - z_i], twice the oriented area of the
/// triangle z_{i-1} z_i z_{i+1}.
double triangle_area2(const Polygon& Z, long i);

/// True iff no three consecutive vertices are collinear: |a_i| > tol * diam^2.
bool is_nondegenerate(const Polygon& Z, double tol = 1e-12);

/// Vertex i of the result is vertex i+s of the input.
Polygon cyclic_shift(const Polygon& Z, long s);

/// Gradient of area2 as a tangent vector: dA(W) = sum_i <grad_i, w_i>.
PolyTangent area2_gradient(const Polygon& Z);

/// Directional derivative of area2 along W.
double d_area2(const Polygon& Z, const PolyTangent& W);

inline PolyTangent zero_tangent(const Polygon& Z) {
  return PolyTangent(Z.size(), Vec2{});
}

}  // namespace obl
