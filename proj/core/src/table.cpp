#include "obl/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace obl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 unit_normal(double th) { return {std::cos(th), std::sin(th)}; }
Vec2 unit_tangent_at(double th) { return {-std::sin(th), std::cos(th)}; }

/// Reduce th into [lo, lo + 2*pi).
double wrap_angle(double th, double lo) {
  double t = std::fmod(th - lo, kTwoPi);
  if (t < 0) t += kTwoPi;
  return lo + t;
}

bool in_interval(double th, double lo, double hi, double tol = 1e-12) {
  double t = wrap_angle(th, lo - tol);
  return t <= hi + tol;
}

}  // namespace

double SupportFourier::h(double th) const {
  double s = h0;
  for (int k = 1; k <= K(); ++k)
    s += coeffs[k - 1][0] * std::cos(k * th) + coeffs[k - 1][1] * std::sin(k * th);
  return s;
}

double SupportFourier::dh(double th) const {
  double s = 0;
  for (int k = 1; k <= K(); ++k)
    s += k * (-coeffs[k - 1][0] * std::sin(k * th) + coeffs[k - 1][1] * std::cos(k * th));
  return s;
}

double SupportFourier::ddh(double th) const {
  double s = 0;
  for (int k = 1; k <= K(); ++k)
    s -= k * k * (coeffs[k - 1][0] * std::cos(k * th) + coeffs[k - 1][1] * std::sin(k * th));
  return s;
}

ConvexTable ConvexTable::support_fourier(double h0,
                                         std::vector<std::array<double, 2>> coeffs) {
  ConvexTable t;
  t.rep_ = SupportFourier{h0, std::move(coeffs)};
  t.validate_fourier();
  return t;
}

ConvexTable ConvexTable::circle(double radius, Vec2 center) {
  if (radius <= 0) throw InvalidTableError("circle radius must be positive");
  return support_fourier(radius, {{center.x, center.y}});
}

ConvexTable ConvexTable::ellipse(double a, double b, int K) {
  if (a <= 0 || b <= 0) throw InvalidTableError("ellipse semi-axes must be positive");
  auto h = [&](double th) {
    double c = std::cos(th), s = std::sin(th);
    return std::sqrt(a * a * c * c + b * b * s * s);
  };
  const int N = 4096;
  double h0 = 0;
  std::vector<std::array<double, 2>> coeffs(static_cast<std::size_t>(K), {0, 0});
  for (int j = 0; j < N; ++j) {
    double th = kTwoPi * j / N;
    double v = h(th);
    h0 += v / N;
    for (int k = 1; k <= K; ++k) {
      coeffs[k - 1][0] += 2.0 / N * v * std::cos(k * th);
      coeffs[k - 1][1] += 2.0 / N * v * std::sin(k * th);
    }
  }
  return support_fourier(h0, std::move(coeffs));
}

ConvexTable ConvexTable::piecewise(std::vector<Piece> pieces) {
  ConvexTable t;
  t.rep_ = std::move(pieces);
  t.validate_pieces();
  return t;
}

ConvexTable ConvexTable::rounded_square(double half_side, double corner_radius) {
  double s = half_side, r = corner_radius;
  if (!(r > 0 && r < s)) throw InvalidTableError("need 0 < corner_radius < half_side");
  double a = s - r;
  const double pi = std::numbers::pi;
  std::vector<Piece> pieces;
  // Normal angle sweeps [-pi/4, 7pi/4): start mid right side.
  pieces.push_back(SegmentPiece{{s, -a}, {s, a}, 0.0});
  pieces.push_back(ArcPiece{{a, a}, r, 0.0, pi / 2});
  pieces.push_back(SegmentPiece{{a, s}, {-a, s}, pi / 2});
  pieces.push_back(ArcPiece{{-a, a}, r, pi / 2, pi});
  pieces.push_back(SegmentPiece{{-s, a}, {-s, -a}, pi});
  pieces.push_back(ArcPiece{{-a, -a}, r, pi, 3 * pi / 2});
  pieces.push_back(SegmentPiece{{-a, -s}, {a, -s}, 3 * pi / 2});
  pieces.push_back(ArcPiece{{a, -a}, r, 3 * pi / 2, kTwoPi});
  return piecewise(std::move(pieces));
}

ConvexTable ConvexTable::arc_sided_square(double half_side, double side_arc_radius) {
  double s = half_side, R = side_arc_radius;
  if (!(R > s * std::numbers::sqrt2))
    throw InvalidTableError("side arc radius must exceed half_side * sqrt(2)");
  double inset = std::sqrt(R * R - s * s);
  double delta = std::asin(s / R);  // half normal-angle span of a side arc
  const double pi = std::numbers::pi;
  std::vector<Piece> pieces;
  // Right side arc spans normals [-delta, delta]; corners fill the gaps.
  auto corner = [&](double cx, double cy, double mid) {
    return CornerPiece{{cx, cy}, mid - pi / 4 + delta, mid + pi / 4 - delta};
  };
  pieces.push_back(ArcPiece{{s - inset, 0}, R, -delta, delta});
  pieces.push_back(corner(s, s, pi / 4));
  pieces.push_back(ArcPiece{{0, s - inset}, R, pi / 2 - delta, pi / 2 + delta});
  pieces.push_back(corner(-s, s, 3 * pi / 4));
  pieces.push_back(ArcPiece{{-(s - inset), 0}, R, pi - delta, pi + delta});
  pieces.push_back(corner(-s, -s, 5 * pi / 4));
  pieces.push_back(ArcPiece{{0, -(s - inset)}, R, 3 * pi / 2 - delta, 3 * pi / 2 + delta});
  pieces.push_back(corner(s, -s, 7 * pi / 4));
  return piecewise(std::move(pieces));
}

bool ConvexTable::is_support_fourier() const {
  return std::holds_alternative<SupportFourier>(rep_);
}

const SupportFourier& ConvexTable::fourier() const {
  return std::get<SupportFourier>(rep_);
}

const std::vector<Piece>& ConvexTable::pieces() const {
  return std::get<std::vector<Piece>>(rep_);
}

void ConvexTable::validate_fourier() {
  const auto& f = fourier();
  const int N = 1024;
  double rmax = 0.0;
  for (int j = 0; j < N; ++j) {
    double th = kTwoPi * j / N;
    if (f.rho(th) <= 0)
      throw InvalidTableError("support function is not strictly convex (rho <= 0)");
    rmax = std::max(rmax, norm(boundary_point(th)));
  }
  scale_ = rmax;
}

void ConvexTable::validate_pieces() {
  const auto& ps = pieces();
  if (ps.empty()) throw InvalidTableError("piecewise table needs pieces");
  double covered = 0.0;
  double rmax = 0.0;
  for (const auto& p : ps) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      if (arc->radius <= 0) throw InvalidTableError("arc radius must be positive");
      if (arc->th1 <= arc->th0) throw InvalidTableError("arc angles must increase");
      covered += arc->th1 - arc->th0;
      rmax = std::max(rmax, norm(arc->center) + arc->radius);
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      if (c->th1 <= c->th0) throw InvalidTableError("corner cone must have positive width");
      covered += c->th1 - c->th0;
      rmax = std::max(rmax, norm(c->point));
    } else {
      const auto& seg = std::get<SegmentPiece>(p);
      Vec2 d = seg.p1 - seg.p0;
      if (norm(d) == 0) throw InvalidTableError("zero-length segment");
      if (dot(d, unit_tangent_at(seg.th)) <= 0 ||
          std::abs(cross(d, unit_tangent_at(seg.th))) > 1e-9 * norm(d))
        throw InvalidTableError("segment direction inconsistent with its normal angle");
      rmax = std::max(rmax, std::max(norm(seg.p0), norm(seg.p1)));
    }
  }
  if (std::abs(covered - kTwoPi) > 1e-9)
    throw InvalidTableError("piece normal angles must cover a full turn");
  scale_ = rmax;
}

double ConvexTable::support(double th) const {
  if (is_support_fourier()) return fourier().h(th);
  // h(th) = max over boundary of <point, n>; piecewise it is explicit.
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      if (in_interval(th, arc->th0, arc->th1))
        return dot(arc->center, unit_normal(th)) + arc->radius;
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      if (in_interval(th, c->th0, c->th1)) return dot(c->point, unit_normal(th));
    } else {
      const auto& seg = std::get<SegmentPiece>(p);
      if (std::abs(wrap_angle(th - seg.th, -std::numbers::pi)) < 1e-12)
        return dot(seg.p0, unit_normal(th));
    }
  }
  // Fall back to the hull max over piece extremes (between-piece tolerance).
  double best = -std::numeric_limits<double>::infinity();
  Vec2 n = unit_normal(th);
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p))
      best = std::max(best, dot(arc->center, n) + arc->radius);
    else if (const auto* c = std::get_if<CornerPiece>(&p))
      best = std::max(best, dot(c->point, n));
    else {
      const auto& seg = std::get<SegmentPiece>(p);
      best = std::max(best, std::max(dot(seg.p0, n), dot(seg.p1, n)));
    }
  }
  return best;
}

Vec2 ConvexTable::boundary_point(double theta) const {
  if (is_support_fourier()) {
    const auto& f = fourier();
    if (f.rho(theta) <= 0)
      throw InvalidTableError("convexity violated at requested angle");
    return f.h(theta) * unit_normal(theta) + f.dh(theta) * unit_tangent_at(theta);
  }
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      if (in_interval(theta, arc->th0, arc->th1))
        return arc->center + arc->radius * unit_normal(theta);
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      if (in_interval(theta, c->th0, c->th1)) return c->point;
    } else {
      const auto& seg = std::get<SegmentPiece>(p);
      if (std::abs(wrap_angle(theta - seg.th, -std::numbers::pi)) < 1e-12)
        return (seg.p0 + seg.p1) * 0.5;
    }
  }
  throw InvalidTableError("no piece covers requested normal angle");
}

double ConvexTable::curvature_radius(double theta) const {
  if (is_support_fourier()) {
    double r = fourier().rho(theta);
    if (r <= 0) throw InvalidTableError("convexity violated: rho <= 0");
    return r;
  }
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      if (in_interval(theta, arc->th0, arc->th1)) return arc->radius;
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      if (in_interval(theta, c->th0, c->th1)) return 0.0;
    } else {
      const auto& seg = std::get<SegmentPiece>(p);
      if (std::abs(wrap_angle(theta - seg.th, -std::numbers::pi)) < 1e-12)
        return std::numeric_limits<double>::infinity();
    }
  }
  throw InvalidTableError("no piece covers requested normal angle");
}

TangencyFrame ConvexTable::right_tangency(Vec2 x) const {
  // g(th) = h(th) - <x, n(th)> is the signed distance of x behind the support
  // line; tangencies are roots, and the right one is the ascending root.
  auto g = [&](double th) { return support(th) - dot(x, unit_normal(th)); };

  if (is_support_fourier()) {
    const auto& f = fourier();
    auto dg = [&](double th) { return f.dh(th) - dot(x, unit_tangent_at(th)); };
    const int N = 64 * std::max(f.K(), 4);
    double gmin = std::numeric_limits<double>::infinity();
    double th_root = std::numeric_limits<double>::quiet_NaN();
    double gprev = g(0.0);
    for (int j = 1; j <= N; ++j) {
      double th = kTwoPi * j / N;
      double gj = g(th);
      gmin = std::min(gmin, gj);
      if (gprev < 0 && gj >= 0 && std::isnan(th_root)) {
        // Ascending crossing in [th - step, th]; bisect then Newton.
        double lo = kTwoPi * (j - 1) / N, hi = th;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          (g(mid) < 0 ? lo : hi) = mid;
        }
        double t0 = 0.5 * (lo + hi);
        for (int it = 0; it < 8; ++it) {
          double d = dg(t0);
          if (d == 0) break;
          t0 -= g(t0) / d;
        }
        th_root = t0;
      }
      gprev = gj;
    }
    if (gmin >= -1e-12 * scale_)
      throw DomainError("point is not strictly outside the table");
    if (std::isnan(th_root)) throw DomainError("no right tangency found");
    return {boundary_point(th_root), th_root, f.rho(th_root),
            unit_tangent_at(th_root)};
  }

  // Piecewise: closed-form candidate per piece.
  {
    const int N = 720;
    double gmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < N; ++j) gmin = std::min(gmin, g(kTwoPi * j / N));
    if (gmin >= -1e-12 * scale_)
      throw DomainError("point is not strictly outside the table");
  }
  // Singular lines: x on the supporting line of a straight piece, approached
  // from the side where it would be the right tangency.
  for (const auto& p : pieces()) {
    if (const auto* seg = std::get_if<SegmentPiece>(&p)) {
      if (std::abs(g(seg->th)) < 1e-10 * scale_) {
        double eps = 1e-6;
        if (g(seg->th - eps) < 0 && g(seg->th + eps) > 0)
          throw SingularLineError("outer map undefined: x on a segment line");
      }
    }
  }
  std::optional<TangencyFrame> found;
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      Vec2 e = arc->center - x;
      double D = norm(e);
      if (D <= arc->radius) continue;
      double phi = std::atan2(e.y, e.x);
      double th = phi - std::acos(-arc->radius / D);  // ascending root
      th = wrap_angle(th, arc->th0 - 1e-12);
      if (th <= arc->th1 + 1e-12)
        found = TangencyFrame{arc->center + arc->radius * unit_normal(th), th,
                              arc->radius, unit_tangent_at(th)};
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      Vec2 e = c->point - x;
      if (norm(e) < 1e-14 * scale_) continue;
      double th = std::atan2(e.y, e.x) - std::numbers::pi / 2;
      th = wrap_angle(th, c->th0 - 1e-12);
      if (th <= c->th1 + 1e-12)
        found = TangencyFrame{c->point, th, 0.0, unit_tangent_at(th)};
    }
  }
  if (!found) throw DomainError("no right tangency found");
  return *found;
}

TangencyFrame ConvexTable::left_tangency(Vec2 x) const {
  auto g = [&](double th) { return support(th) - dot(x, unit_normal(th)); };
  if (is_support_fourier()) {
    const auto& f = fourier();
    auto dg = [&](double th) { return f.dh(th) - dot(x, unit_tangent_at(th)); };
    const int N = 64 * std::max(f.K(), 4);
    double gmin = std::numeric_limits<double>::infinity();
    double th_root = std::numeric_limits<double>::quiet_NaN();
    double gprev = g(0.0);
    for (int j = 1; j <= N; ++j) {
      double th = kTwoPi * j / N;
      double gj = g(th);
      gmin = std::min(gmin, gj);
      if (gprev >= 0 && gj < 0 && std::isnan(th_root)) {
        double lo = kTwoPi * (j - 1) / N, hi = th;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          (g(mid) >= 0 ? lo : hi) = mid;
        }
        double t0 = 0.5 * (lo + hi);
        for (int it = 0; it < 8; ++it) {
          double d = dg(t0);
          if (d == 0) break;
          t0 -= g(t0) / d;
        }
        th_root = t0;
      }
      gprev = gj;
    }
    if (gmin >= -1e-12 * scale_)
      throw DomainError("point is not strictly outside the table");
    if (std::isnan(th_root)) throw DomainError("no left tangency found");
    return {boundary_point(th_root), th_root, f.rho(th_root),
            unit_tangent_at(th_root)};
  }
  {
    const int N = 720;
    double gmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < N; ++j) gmin = std::min(gmin, g(kTwoPi * j / N));
    if (gmin >= -1e-12 * scale_)
      throw DomainError("point is not strictly outside the table");
  }
  for (const auto& p : pieces()) {
    if (const auto* seg = std::get_if<SegmentPiece>(&p)) {
      if (std::abs(g(seg->th)) < 1e-10 * scale_) {
        double eps = 1e-6;
        if (g(seg->th - eps) > 0 && g(seg->th + eps) < 0)
          throw SingularLineError("inverse map undefined: x on a segment line");
      }
    }
  }
  std::optional<TangencyFrame> found;
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p)) {
      Vec2 e = arc->center - x;
      double D = norm(e);
      if (D <= arc->radius) continue;
      double phi = std::atan2(e.y, e.x);
      double th = phi + std::acos(-arc->radius / D);  // descending root
      th = wrap_angle(th, arc->th0 - 1e-12);
      if (th <= arc->th1 + 1e-12)
        found = TangencyFrame{arc->center + arc->radius * unit_normal(th), th,
                              arc->radius, unit_tangent_at(th)};
    } else if (const auto* c = std::get_if<CornerPiece>(&p)) {
      Vec2 e = c->point - x;
      if (norm(e) < 1e-14 * scale_) continue;
      double th = std::atan2(e.y, e.x) + std::numbers::pi / 2;
      th = wrap_angle(th, c->th0 - 1e-12);
      if (th <= c->th1 + 1e-12)
        found = TangencyFrame{c->point, th, 0.0, unit_tangent_at(th)};
    }
  }
  if (!found) throw DomainError("no left tangency found");
  return *found;
}

Vec2 ConvexTable::outer_map(Vec2 x) const {
  TangencyFrame tf = right_tangency(x);
  return 2.0 * tf.point - x;
}

Vec2 ConvexTable::outer_map_inverse(Vec2 x) const {
  TangencyFrame tf = left_tangency(x);
  return 2.0 * tf.point - x;
}

MapDifferential ConvexTable::outer_map_diff(Vec2 x) const {
  TangencyFrame tf = right_tangency(x);
  double r = norm(tf.point - x);
  if (r == 0) throw DomainError("query point coincides with the support point");
  MapDifferential out;
  out.rho = tf.rho;
  out.r = r;
  out.e1 = (tf.point - x) / r;
  out.segment = Mat2{-1.0, -2.0 * tf.rho / r, 0.0, -1.0};
  Vec2 e2 = rot90(out.e1);
  Mat2 R{out.e1.x, e2.x, out.e1.y, e2.y};
  out.world = R * out.segment * R.transposed();
  return out;
}

MapDifferential ConvexTable::outer_map_inverse_diff(Vec2 x) const {
  TangencyFrame tf = left_tangency(x);
  double r = norm(tf.point - x);
  if (r == 0) throw DomainError("query point coincides with the support point");
  MapDifferential out;
  out.rho = tf.rho;
  out.r = r;
  out.e1 = (tf.point - x) / r;
  out.segment = Mat2{-1.0, 2.0 * tf.rho / r, 0.0, -1.0};
  Vec2 e2 = rot90(out.e1);
  Mat2 R{out.e1.x, e2.x, out.e1.y, e2.y};
  out.world = R * out.segment * R.transposed();
  return out;
}

ConvexTable ConvexTable::similarity_transformed(double phi, double s, Vec2 c) const {
  if (s <= 0) throw InvalidTableError("similarity scale must be positive");
  if (is_support_fourier()) {
    const auto& f = fourier();
    std::vector<std::array<double, 2>> coeffs(f.coeffs.size());
    for (int k = 1; k <= f.K(); ++k) {
      double ck = std::cos(k * phi), sk = std::sin(k * phi);
      double a = f.coeffs[k - 1][0], b = f.coeffs[k - 1][1];
      coeffs[k - 1] = {s * (a * ck - b * sk), s * (a * sk + b * ck)};
    }
    if (coeffs.empty()) coeffs.push_back({0, 0});
    coeffs[0][0] += c.x;
    coeffs[0][1] += c.y;
    return support_fourier(s * f.h0, std::move(coeffs));
  }
  Mat2 R = Mat2::rotation(phi);
  auto map = [&](Vec2 p) { return s * (R * p) + c; };
  std::vector<Piece> out;
  for (const auto& p : pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&p))
      out.push_back(ArcPiece{map(arc->center), s * arc->radius, arc->th0 + phi,
                             arc->th1 + phi});
    else if (const auto* cp = std::get_if<CornerPiece>(&p))
      out.push_back(CornerPiece{map(cp->point), cp->th0 + phi, cp->th1 + phi});
    else {
      const auto& seg = std::get<SegmentPiece>(p);
      out.push_back(SegmentPiece{map(seg.p0), map(seg.p1), seg.th + phi});
    }
  }
  return piecewise(std::move(out));
}

double mirror_residual(double alpha, double beta, double rho, double r) {
  return 1.0 / std::tan(alpha) + 1.0 / std::tan(beta) - 2.0 * rho / r;
}

}  // namespace obl
