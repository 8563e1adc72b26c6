#include "obl/geom.hpp"

#include <algorithm>
#include <cmath>

namespace obl {

Polygon::Polygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3) throw Error("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Vec2& a = verts_[i];
    const Vec2& b = verts_[(i + 1) % verts_.size()];
    if (a == b) throw Error("consecutive vertices coincide");
    if (!std::isfinite(a.x) || !std::isfinite(a.y))
      throw Error("non-finite vertex");
  }
}

double Polygon::diameter() const {
  double d2 = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    for (std::size_t j = i + 1; j < verts_.size(); ++j)
      d2 = std::max(d2, norm2(verts_[i] - verts_[j]));
  return std::sqrt(d2);
}

double area2(const Polygon& Z) {
  double s = 0.0;
  for (long i = 0; i < Z.n(); ++i) s += cross(Z[i], Z[i + 1]);
  return s;
}

double triangle_area2(const Polygon& Z, long i) {
  return cross(Z[i] - Z[i - 1], Z[i + 1] - Z[i]);
}

bool is_nondegenerate(const Polygon& Z, double tol) {
  double scale2 = Z.diameter() * Z.diameter();
  for (long i = 0; i < Z.n(); ++i)
    if (std::abs(triangle_area2(Z, i)) <= tol * scale2) return false;
  return true;
}

Polygon cyclic_shift(const Polygon& Z, long s) {
  std::vector<Vec2> out(Z.size());
  for (long i = 0; i < Z.n(); ++i) out[static_cast<std::size_t>(i)] = Z[i + s];
  return Polygon(std::move(out));
}

PolyTangent area2_gradient(const Polygon& Z) {
  // dA(W) = sum_i [w_i, z_{i+1} - z_{i-1}], so grad_i = rot(-90)(z_{i+1} - z_{i-1}).
  PolyTangent g(Z.size());
  for (long i = 0; i < Z.n(); ++i) {
    Vec2 d = Z[i + 1] - Z[i - 1];
    g[static_cast<std::size_t>(i)] = Vec2{d.y, -d.x};
  }
  return g;
}

double d_area2(const Polygon& Z, const PolyTangent& W) {
  double s = 0.0;
  for (long i = 0; i < Z.n(); ++i)
    s += cross(W[Z.wrap(i)], Z[i + 1] - Z[i - 1]);
  return s;
}

}  // namespace obl
