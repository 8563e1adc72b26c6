#include "obl/birkhoff.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace obl {

namespace {

/// Directional derivative of a_i at Z along V.
double d_triangle_area2(const Polygon& Z, long i, const PolyTangent& V) {
  auto v = [&](long j) { return V[Z.wrap(j)]; };
  return cross(v(i) - v(i - 1), Z[i + 1] - Z[i]) +
         cross(Z[i] - Z[i - 1], v(i + 1) - v(i));
}

/// Directional derivative of the field map Z -> W_k(Z) along V.
PolyTangent d_frame_field(const Polygon& Z, long k, const PolyTangent& V) {
  auto v = [&](long j) { return V[Z.wrap(j)]; };
  PolyTangent out = zero_tangent(Z);
  double ak = triangle_area2(Z, k);
  double ak1 = triangle_area2(Z, k + 1);
  double dak = d_triangle_area2(Z, k, V);
  double dak1 = d_triangle_area2(Z, k + 1, V);
  out[Z.wrap(k)] = dak1 * (Z[k] - Z[k - 1]) + ak1 * (v(k) - v(k - 1));
  out[Z.wrap(k + 1)] = dak * (Z[k + 2] - Z[k + 1]) + ak * (v(k + 2) - v(k + 1));
  return out;
}

Polygon rk4_flow(const Polygon& Z0, long k, double h, int steps) {
  std::vector<Vec2> z = Z0.vertices();
  auto eval = [&](const std::vector<Vec2>& zz) {
    return frame_field(Polygon(zz), k);
  };
  double dt = h / steps;
  for (int s = 0; s < steps; ++s) {
    auto add = [&](const std::vector<Vec2>& base, const PolyTangent& d, double c) {
      std::vector<Vec2> out = base;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * d[i];
      return out;
    };
    PolyTangent k1 = eval(z);
    PolyTangent k2 = eval(add(z, k1, dt / 2));
    PolyTangent k3 = eval(add(z, k2, dt / 2));
    PolyTangent k4 = eval(add(z, k3, dt));
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return Polygon(std::move(z));
}

}  // namespace

PolyTangent frame_field(const Polygon& Z, long k) {
  PolyTangent W = zero_tangent(Z);
  W[Z.wrap(k)] = triangle_area2(Z, k + 1) * (Z[k] - Z[k - 1]);
  W[Z.wrap(k + 1)] = triangle_area2(Z, k) * (Z[k + 2] - Z[k + 1]);
  return W;
}

DistributionFrame frame(const Polygon& Z) {
  if (!is_nondegenerate(Z)) throw DegeneracyError("degenerate polygon");
  DistributionFrame f{Z, {}};
  f.fields.reserve(Z.size());
  for (long k = 1; k <= Z.n(); ++k) f.fields.push_back(frame_field(Z, k));
  return f;
}

double alpha(const Polygon& Z, long i, const PolyTangent& W) {
  return cross(Z[i + 1] - Z[i], W[Z.wrap(i + 1)] + W[Z.wrap(i)]);
}

bool is_horizontal(const Polygon& Z, const PolyTangent& W, double tol) {
  double d = Z.diameter();
  double bound = tol * d * d * d;
  for (long i = 1; i <= Z.n(); ++i)
    if (std::abs(alpha(Z, i, W)) > bound) return false;
  return true;
}

std::pair<double, double> sum_alpha_vs_dA(const Polygon& Z, const PolyTangent& W) {
  double s = 0.0;
  for (long i = 1; i <= Z.n(); ++i) s += alpha(Z, i, W);
  return {s, d_area2(Z, W)};
}

double omega_pair(const Polygon& Z, long i, const PolyTangent& V, const PolyTangent& W) {
  return cross(V[Z.wrap(i)], W[Z.wrap(i)]);
}

double d_alpha_pair(const Polygon& Z, long i, const PolyTangent& V, const PolyTangent& W) {
  return 2.0 * (omega_pair(Z, i + 1, V, W) - omega_pair(Z, i, V, W));
}

PolyTangent lie_bracket(const Polygon& Z, long j, long k, double h) {
  if (!is_nondegenerate(Z)) throw DegeneracyError("degenerate polygon");
  if (h > 0) {
    // Flow composition: Phi_j^{-h} Phi_k^{-h} Phi_j^{h} Phi_k^{h} = Id + h^2 [W_k, W_j] + O(h^3).
    Polygon P = rk4_flow(Z, k, h, 2);
    P = rk4_flow(P, j, h, 2);
    P = rk4_flow(P, k, -h, 2);
    P = rk4_flow(P, j, -h, 2);
    PolyTangent out(Z.size());
    for (long i = 0; i < Z.n(); ++i)
      out[Z.wrap(i)] = (Z[i] - P[i]) / (h * h);  // orient as [W_j, W_k]
    return out;
  }
  PolyTangent Wj = frame_field(Z, j);
  PolyTangent Wk = frame_field(Z, k);
  PolyTangent dk = d_frame_field(Z, k, Wj);
  PolyTangent dj = d_frame_field(Z, j, Wk);
  PolyTangent out(Z.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = dk[i] - dj[i];
  return out;
}

int bracket_growth_rank(const Polygon& Z, double rel_threshold) {
  if (!is_nondegenerate(Z)) throw DegeneracyError("degenerate polygon");
  // Normalize to unit diameter about the centroid; ranks are scale sensitive.
  Vec2 c{};
  for (long i = 0; i < Z.n(); ++i) c += Z[i];
  c = c / static_cast<double>(Z.n());
  double d = Z.diameter();
  std::vector<Vec2> zs(Z.size());
  for (long i = 0; i < Z.n(); ++i) zs[Z.wrap(i)] = (Z[i] - c) / d;
  Polygon N(std::move(zs));

  long n = N.n();
  PolyTangent grad = area2_gradient(N);
  double g2 = 0;
  for (const Vec2& g : grad) g2 += norm2(g);

  Eigen::MatrixXd M(2 * n, 2 * n);
  auto put = [&](long col, const PolyTangent& W) {
    // Project onto ker(dA).
    double proj = 0;
    for (long i = 0; i < n; ++i) proj += dot(W[N.wrap(i)], grad[N.wrap(i)]);
    for (long i = 0; i < n; ++i) {
      Vec2 w = W[N.wrap(i)] - (proj / g2) * grad[N.wrap(i)];
      M(2 * i, col) = w.x;
      M(2 * i + 1, col) = w.y;
    }
  };
  for (long k = 1; k <= n; ++k) put(k - 1, frame_field(N, k));
  for (long k = 1; k <= n; ++k) put(n + k - 1, lie_bracket(N, k - 1, k));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  return rank;
}

}  // namespace obl
