#include "obl/triangle3.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace obl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 to_vec(std::complex<double> z) { return {z.real(), z.imag()}; }

Vec2 eval_series(const std::map<int, std::complex<double>>& coeffs, double t,
                 int derivative = 0) {
  std::complex<double> s = 0.0;
  const std::complex<double> I(0.0, 1.0);
  for (const auto& [m, c] : coeffs) {
    std::complex<double> term = c * std::exp(I * (m * t));
    for (int d = 0; d < derivative; ++d) term *= I * static_cast<double>(m);
    s += term;
  }
  return to_vec(s);
}

}  // namespace

EquivariantCurve::EquivariantCurve(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& [m, c] : coeffs_)
    if (m % 3 == 0)
      throw InvalidCurveError("frequency divisible by 3 breaks Z3 equivariance");
}

EquivariantCurve EquivariantCurve::circular() {
  return EquivariantCurve({{1, {1.0, 0.0}}});
}

std::complex<double> EquivariantCurve::coeff(int m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

EquivariantCurve EquivariantCurve::with_coeff(int m, std::complex<double> c) const {
  Coeffs out = coeffs_;
  out[m] = c;
  return EquivariantCurve(std::move(out));
}

Vec2 EquivariantCurve::ubar(double t) const { return eval_series(coeffs_, t); }
Vec2 EquivariantCurve::dubar(double t) const { return eval_series(coeffs_, t, 1); }

double EquivariantCurve::pairing(double t) const {
  return cross(ubar(t), ubar(t + two_pi_3));
}

double EquivariantCurve::scale(double t) const {
  double g = pairing(t);
  if (g <= 0) throw InvalidCurveError("orientation failure: [ubar, ubar(.+2pi/3)] <= 0");
  return 1.0 / std::sqrt(g);
}

Vec2 EquivariantCurve::u(double t) const { return scale(t) * ubar(t); }

Vec2 EquivariantCurve::du(double t) const {
  double g = pairing(t);
  if (g <= 0) throw InvalidCurveError("orientation failure: [ubar, ubar(.+2pi/3)] <= 0");
  double dg = cross(dubar(t), ubar(t + two_pi_3)) + cross(ubar(t), dubar(t + two_pi_3));
  double s = 1.0 / std::sqrt(g);
  double ds = -0.5 * dg * s / g;
  return ds * ubar(t) + s * dubar(t);
}

void EquivariantCurve::validate(int grid) const {
  for (int i = 0; i < grid; ++i)
    if (pairing(kTwoPi * i / grid) <= 0)
      throw InvalidCurveError("orientation failure on validation grid");
}

PQR pqr(const EquivariantCurve& curve, double t) {
  Vec2 ut = curve.u(t), vt = curve.v(t);
  Vec2 dut = curve.du(t), dvt = curve.dv(t);
  return {cross(ut, dut), cross(vt, dvt), cross(dut, vt)};
}

Vec2 centroid_velocity(const EquivariantCurve& curve, double t) {
  auto [p, q, r] = pqr(curve, t);
  return (p - 2 * q + 2 * r) / 3.0 * curve.v(t) - (q - 2 * p + 2 * r) / 3.0 * curve.u(t);
}

Monodromy3 monodromy_residual3(const EquivariantCurve& curve, int samples) {
  Vec2 m3{}, m2{};
  double dt = kTwoPi / samples;
  for (int i = 0; i < samples; ++i) {
    double t = i * dt;
    auto [p, q, r] = pqr(curve, t);
    Vec2 ut = curve.u(t), vt = curve.v(t);
    m3 += dt * r * (vt - ut);
    m2 += dt * ((p - 2 * q + 2 * r) * vt - (q - 2 * p + 2 * r) * ut);
  }
  return {m3, m2};
}

EquivariantCurve solve_monodromy3(const EquivariantCurve& seed,
                                  std::pair<int, int> free_slots, int max_iter,
                                  Solve3Report* report) {
  seed.validate();
  auto [m1, m2] = free_slots;
  EquivariantCurve cur = seed;
  auto get = [&](const EquivariantCurve& c, int which) {
    return which == 0 ? c.coeff(m1).real() : c.coeff(m2).imag();
  };
  auto set = [&](const EquivariantCurve& c, int which, double val) {
    std::complex<double> z = c.coeff(which == 0 ? m1 : m2);
    if (which == 0)
      return c.with_coeff(m1, {val, z.imag()});
    return c.with_coeff(m2, {z.real(), val});
  };
  auto res = [](const EquivariantCurve& c) {
    return monodromy_residual3(c).mon3;
  };

  Solve3Report local;
  Solve3Report& rep = report ? *report : local;
  Vec2 r = res(cur);
  rep.residual_history.push_back(norm(r));
  const double tol = 1e-10;
  for (int it = 0; it < max_iter && norm(r) >= tol; ++it) {
    const double h = 1e-6;
    Eigen::Matrix2d J;
    for (int s = 0; s < 2; ++s) {
      Vec2 rp = res(set(cur, s, get(cur, s) + h));
      Vec2 rm = res(set(cur, s, get(cur, s) - h));
      Vec2 dr = (rp - rm) / (2 * h);
      J(0, s) = dr.x;
      J(1, s) = dr.y;
    }
    Eigen::Vector2d rhs(-r.x, -r.y);
    Eigen::Vector2d step = J.colPivHouseholderQr().solve(rhs);
    // Backtrack if the full step leaves the admissible (oriented) region or
    // fails to decrease the residual.
    double lambda = 1.0;
    EquivariantCurve next = cur;
    Vec2 rn = r;
    for (int bt = 0; bt < 30; ++bt, lambda *= 0.5) {
      EquivariantCurve trial = set(cur, 0, get(cur, 0) + lambda * step(0));
      trial = set(trial, 1, get(trial, 1) + lambda * step(1));
      try {
        Vec2 rt = res(trial);
        if (norm(rt) < norm(r)) {
          next = std::move(trial);
          rn = rt;
          break;
        }
      } catch (const InvalidCurveError&) {
      }
    }
    if (norm(rn) >= norm(r)) break;  // no admissible descent step
    cur = std::move(next);
    r = rn;
    rep.residual_history.push_back(norm(r));
    rep.iterations = it + 1;
  }
  rep.converged = norm(r) < tol;
  if (!rep.converged)
    throw ConvergenceError("monodromy solve did not converge", rep.residual_history);
  return cur;
}

Vec2 TriangleFamily::c(double t) const { return eval_series(c_coeffs, t); }
Vec2 TriangleFamily::dc(double t) const { return centroid_velocity(curve, t); }

Vec2 TriangleFamily::w(int i, double t) const {
  Vec2 ct = c(t);
  switch (i) {
    case 1: return curve.u(t) + ct;
    case 2: return curve.v(t) + ct;
    case 3: return -curve.u(t) - curve.v(t) + ct;
    default: throw PreconditionError("triangle vertex index must be 1, 2 or 3");
  }
}

Vec2 TriangleFamily::dw(int i, double t) const {
  Vec2 dct = dc(t);
  switch (i) {
    case 1: return curve.du(t) + dct;
    case 2: return curve.dv(t) + dct;
    case 3: return -curve.du(t) - curve.dv(t) + dct;
    default: throw PreconditionError("triangle vertex index must be 1, 2 or 3");
  }
}

TriangleFamily build_family(const EquivariantCurve& curve, int samples) {
  curve.validate();
  Monodromy3 mon = monodromy_residual3(curve, samples);
  if (norm(mon.mon3) >= 1e-10)
    throw PreconditionError("monodromy residual too large to build a family");

  // Spectral antiderivative: project c' onto Fourier modes, divide by im,
  // drop the (vanishing) mean to center the family.
  int maxm = 0;
  for (const auto& [m, _] : curve.coeffs()) maxm = std::max(maxm, std::abs(m));
  int band = 4 * maxm + 8;
  std::vector<Vec2> dc(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    dc[static_cast<std::size_t>(i)] = centroid_velocity(curve, kTwoPi * i / samples);
  TriangleFamily fam{curve, {}, false};
  const std::complex<double> I(0.0, 1.0);
  for (int m = -band; m <= band; ++m) {
    if (m == 0) continue;
    std::complex<double> proj = 0.0;
    for (int i = 0; i < samples; ++i) {
      double t = kTwoPi * i / samples;
      std::complex<double> f(dc[static_cast<std::size_t>(i)].x,
                             dc[static_cast<std::size_t>(i)].y);
      proj += f * std::exp(-I * (m * t));
    }
    proj /= static_cast<double>(samples);
    std::complex<double> cm = proj / (I * static_cast<double>(m));
    if (std::abs(cm) > 1e-14) fam.c_coeffs[m] = cm;
  }

  fam.convex = true;
  int grid = 512;
  for (int i = 0; i < grid && fam.convex; ++i) {
    double t = kTwoPi * i / grid;
    double dt = kTwoPi / grid;
    Vec2 a = fam.dw(1, t);
    Vec2 b = fam.dw(1, t + dt);
    if (cross(a, b) <= 0) fam.convex = false;
  }
  return fam;
}

Polygon circumscribed_orbit(const TriangleFamily& family, double t) {
  Vec2 pt[3], dir[3];
  for (int i = 0; i < 3; ++i) {
    pt[i] = family.w(i + 1, t);
    dir[i] = family.dw(i + 1, t);
  }
  auto intersect = [&](int i, int j) {
    // pt_i + s dir_i = pt_j + u dir_j
    double den = cross(dir[i], dir[j]);
    double sc = norm(dir[i]) * norm(dir[j]);
    if (std::abs(den) < 1e-10 * sc)
      throw DegeneracyError("tangent lines are nearly parallel");
    double s = cross(pt[j] - pt[i], dir[j]) / den;
    return pt[i] + s * dir[i];
  };
  // z_i is the intersection of the tangents at w_{i+1} and w_{i+2}, so that
  // w_i is the midpoint of the side z_{i+1} z_{i+2}.
  Vec2 z1 = intersect(1, 2);
  Vec2 z2 = intersect(2, 0);
  Vec2 z3 = intersect(0, 1);
  return Polygon({z1, z2, z3});
}

}  // namespace obl
