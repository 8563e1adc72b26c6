#include "obl/horizontal.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <numeric>

#include "obl/birkhoff.hpp"

namespace obl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PolyTangent control_velocity(const Polygon& Z, const ControlSignal& c, double t) {
  PolyTangent v = zero_tangent(Z);
  for (long k = 1; k <= Z.n(); ++k) {
    double ck = c.eval(k, t);
    if (ck == 0.0) continue;
    PolyTangent Wk = frame_field(Z, k);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += ck * Wk[i];
  }
  return v;
}

std::vector<Vec2> axpy(const std::vector<Vec2>& z, const PolyTangent& d, double c) {
  std::vector<Vec2> out = z;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * d[i];
  return out;
}

}  // namespace

double ControlSignal::window(double t) {
  const double lo = 0.05, hi = 0.95;
  if (t <= lo || t >= hi) return 0.0;
  double s = (t - lo) / (hi - lo);
  return std::exp(4.0 - 1.0 / (s * (1.0 - s)));
}

double ControlSignal::eval(long k, double t) const {
  int n_ = n();
  long idx = ((k - 1) % n_ + n_) % n_;
  auto raw = [&](long i, double s) {
    double v = baseline[static_cast<std::size_t>(i)];
    if (!coeffs.empty()) {
      const auto& p = coeffs[static_cast<std::size_t>(i)];
      double w = window(s);
      if (w != 0.0) {
        double pert = 0.0;
        for (int m = 1; m <= modes(); ++m)
          pert += p[static_cast<std::size_t>(2 * m - 2)] * std::cos(kTwoPi * m * s) +
                  p[static_cast<std::size_t>(2 * m - 1)] * std::sin(kTwoPi * m * s);
        v += w * pert;
      }
    }
    return v;
  };
  if (deck_order <= 1) return raw(idx, t);
  // Average over the deck orbit (i, s) -> (i + p, s + f), wrapping excess
  // time through the relabeling rule c_i(s + 1) = c_{i+1}(s).
  double sum = 0.0;
  long i = idx;
  double s = t;
  for (int a = 0; a < deck_order; ++a) {
    sum += raw(i, s);
    i += deck_shift;
    s += deck_frac;
    if (s >= 1.0) {
      s -= 1.0;
      i += 1;
    }
    i %= n_;
  }
  return sum / deck_order;
}

ControlSignal ControlSignal::with_deck(int n_poly, int k) const {
  ControlSignal out = *this;
  out.deck_order = k;
  out.deck_shift = n_poly / k;
  out.deck_frac = static_cast<double>(n_poly % k) / k;
  return out;
}

ControlSignal ControlSignal::constants(std::vector<double> baseline, int modes) {
  ControlSignal c;
  c.coeffs.assign(baseline.size(), std::vector<double>(2 * modes, 0.0));
  c.baseline = std::move(baseline);
  return c;
}

PolyTangent HorizontalPath::velocity_at(int i) const {
  return control_velocity(samples[static_cast<std::size_t>(i)], controls, time_at(i));
}

HorizontalPath integrate(const Polygon& start, const ControlSignal& controls, int N) {
  if (N < 1) throw PreconditionError("need at least one step");
  if (static_cast<int>(start.size()) != controls.n())
    throw PreconditionError("control count must match polygon size");
  if (!is_nondegenerate(start)) throw DegeneracyError("degenerate start polygon");
  HorizontalPath path{start, controls, N, {}};
  path.samples.reserve(static_cast<std::size_t>(N) + 1);
  path.samples.push_back(start);
  std::vector<Vec2> z = start.vertices();
  double dt = 1.0 / N;
  for (int s = 0; s < N; ++s) {
    double t = s * dt;
    PolyTangent k1 = control_velocity(Polygon(z), controls, t);
    PolyTangent k2 = control_velocity(Polygon(axpy(z, k1, dt / 2)), controls, t + dt / 2);
    PolyTangent k3 = control_velocity(Polygon(axpy(z, k2, dt / 2)), controls, t + dt / 2);
    PolyTangent k4 = control_velocity(Polygon(axpy(z, k3, dt)), controls, t + dt);
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    Polygon P(z);
    if (!is_nondegenerate(P))
      throw PathDegenerationError("path degenerated during integration", t + dt);
    path.samples.push_back(P);
  }
  return path;
}

std::pair<Polygon, ControlSignal> circle_baseline(int n, int k) {
  if (n < 3 || k < 1 || 2 * k > n) throw DomainError("need 3 <= n and 1 <= k <= n/2");
  if (std::gcd(n, k) != 1) throw DomainError("n and k must be coprime");
  std::vector<Vec2> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double a = kTwoPi * k * j / n;
    z[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
  }
  Polygon Z0(std::move(z));
  // Velocity of the rotating family: z_j' = (2 pi k / n) i z_j.
  double w = kTwoPi * k / n;
  Eigen::MatrixXd A(2 * n, n);
  Eigen::VectorXd b(2 * n);
  for (int j = 0; j < n; ++j) {
    Vec2 v = w * rot90(Z0[j]);
    b(2 * j) = v.x;
    b(2 * j + 1) = v.y;
  }
  for (int kk = 1; kk <= n; ++kk) {
    PolyTangent Wk = frame_field(Z0, kk);
    for (int j = 0; j < n; ++j) {
      A(2 * j, kk - 1) = Wk[static_cast<std::size_t>(j)].x;
      A(2 * j + 1, kk - 1) = Wk[static_cast<std::size_t>(j)].y;
    }
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  if ((A * c - b).norm() > 1e-12)
    throw Error("circular family velocity is not horizontal (frame solve failed)");
  std::vector<double> base(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) base[static_cast<std::size_t>(j)] = c(j);
  return {Z0, ControlSignal::constants(std::move(base))};
}

std::vector<double> monodromy_residual(const HorizontalPath& path) {
  const Polygon& end = path.samples.back();
  Polygon target = cyclic_shift(path.start, 1);
  std::vector<double> r;
  r.reserve(2 * end.size());
  for (long i = 0; i < end.n(); ++i) {
    Vec2 d = end[i] - target[i];
    r.push_back(d.x);
    r.push_back(d.y);
  }
  return r;
}

ControlSignal shoot(int n, int k, const ControlSignal& seed, int max_iter, int N,
                    ShootReport* report) {
  auto [Z0, base] = circle_baseline(n, k);
  ControlSignal controls = k > 1 ? base.with_deck(n, k) : base;
  if (k > 1) N += (k - N % k) % k;  // land a sample exactly at t = (n mod k)/k
  if (seed.n() != 0 && seed.n() != n)
    throw PreconditionError("seed control count must match n");
  int M = std::max(seed.modes(), (2 * n - 1 + 2 * n - 1) / (2 * n));  // >= 1
  controls.coeffs.assign(static_cast<std::size_t>(n), std::vector<double>(2 * M, 0.0));
  for (int kk = 0; kk < seed.n(); ++kk)
    for (std::size_t m = 0; m < seed.coeffs[static_cast<std::size_t>(kk)].size(); ++m)
      controls.coeffs[static_cast<std::size_t>(kk)][m] =
          seed.coeffs[static_cast<std::size_t>(kk)][m];

  const int nu = 2 * n - 1;  // Newton unknowns
  if (n * 2 * M < nu) throw PreconditionError("not enough perturbation slots");
  // Unknown slots in mode-major order, spreading across the n controls.
  auto slot = [&](int s) { return std::pair<int, int>{s % n, s / n}; };

  // Drop the residual component with the largest area gradient at the target;
  // area conservation along horizontal paths makes it redundant.
  Polygon target = k > 1 ? Z0 : cyclic_shift(Z0, 1);
  PolyTangent grad = area2_gradient(target);
  int drop = 0;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    if (std::abs(grad[static_cast<std::size_t>(i)].x) > best) {
      best = std::abs(grad[static_cast<std::size_t>(i)].x);
      drop = 2 * i;
    }
    if (std::abs(grad[static_cast<std::size_t>(i)].y) > best) {
      best = std::abs(grad[static_cast<std::size_t>(i)].y);
      drop = 2 * i + 1;
    }
  }

  double scale = Z0.diameter();
  // For k = 1 the closure condition is the monodromy Z(1) = sigma(Z(0)). For
  // k > 1 the deck-symmetrized path closes iff the fractional closure
  // z_{j+p}(f) = z_j(0) holds; the full monodromy then follows by iterating
  // the deck relation k times.
  auto residual = [&, Z0 = Z0](const ControlSignal& c) {
    HorizontalPath path = integrate(Z0, c, N);
    if (k == 1) return monodromy_residual(path);
    int idx = static_cast<int>(std::lround(N * c.deck_frac));
    Polygon shifted = cyclic_shift(path.samples[static_cast<std::size_t>(idx)],
                                   c.deck_shift);
    std::vector<double> r;
    r.reserve(2 * static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      Vec2 d = shifted[i] - Z0[i];
      r.push_back(d.x);
      r.push_back(d.y);
    }
    return r;
  };
  auto reduced = [&](const std::vector<double>& full) {
    Eigen::VectorXd r(nu);
    int j = 0;
    for (int i = 0; i < 2 * n; ++i)
      if (i != drop) r(j++) = full[static_cast<std::size_t>(i)];
    return r;
  };
  auto full_norm = [](const std::vector<double>& r) {
    double s = 0;
    for (double v : r) s += v * v;
    return std::sqrt(s);
  };

  ShootReport local;
  ShootReport& rep = report ? *report : local;
  std::vector<double> full = residual(controls);
  rep.residual_history.push_back(full_norm(full));
  // Well below the 1e-8 closure targets: the fractional-closure error of a
  // k > 1 family is amplified by the flow Jacobian over the remaining time.
  const double tol = 1e-10 * scale;
  for (int it = 0; it < max_iter && full_norm(full) >= tol; ++it) {
    Eigen::VectorXd r0 = reduced(full);
    Eigen::MatrixXd J(nu, nu);
    const double h = 1e-7;
    for (int s = 0; s < nu; ++s) {
      auto [kk, mm] = slot(s);
      ControlSignal cp = controls;
      cp.coeffs[static_cast<std::size_t>(kk)][static_cast<std::size_t>(mm)] += h;
      J.col(s) = (reduced(residual(cp)) - r0) / h;
    }
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r0);
    for (int s = 0; s < nu; ++s) {
      auto [kk, mm] = slot(s);
      controls.coeffs[static_cast<std::size_t>(kk)][static_cast<std::size_t>(mm)] += step(s);
    }
    full = residual(controls);
    rep.residual_history.push_back(full_norm(full));
    rep.iterations = it + 1;
  }
  rep.converged = full_norm(full) < tol;
  if (!rep.converged)
    throw ConvergenceError("shooting did not converge", rep.residual_history);
  return controls;
}

EnvelopeCurve reconstruct_table(const HorizontalPath& path) {
  std::vector<double> res = monodromy_residual(path);
  double rn = 0;
  for (double v : res) rn += v * v;
  double scale = path.start.diameter();
  if (std::sqrt(rn) >= 1e-6 * scale)
    throw PreconditionError("path is not closed: monodromy residual too large");
  EnvelopeCurve env;
  long n = path.start.n();
  for (long i = 0; i < n; ++i) {
    for (int s = 0; s < path.steps; ++s) {  // skip t = 1: m_i(1) = m_{i+1}(0)
      const Polygon& Z = path.samples[static_cast<std::size_t>(s)];
      PolyTangent V = path.velocity_at(s);
      env.points.push_back(0.5 * (Z[i] + Z[i + 1]));
      env.tangents.push_back(0.5 * (V[Z.wrap(i)] + V[Z.wrap(i + 1)]));
    }
  }
  env.convex = true;
  for (std::size_t j = 0; j < env.tangents.size(); ++j) {
    Vec2 a = env.tangents[j];
    Vec2 b = env.tangents[(j + 1) % env.tangents.size()];
    if (cross(a, b) < -1e-12 * norm(a) * norm(b)) {
      env.convex = false;
      break;
    }
  }
  return env;
}

FamilyReport verify_periodic_family(const HorizontalPath& path, int samples, int K) {
  EnvelopeCurve env = reconstruct_table(path);
  double scale = path.start.diameter();
  SupportFit fit = fit_support_fourier(env.points, env.tangents, K);
  FamilyReport rep;
  rep.fit_residual = fit.max_residual;
  rep.fit_ok = fit.max_residual < 1e-6 * scale;
  if (!rep.fit_ok) return rep;
  long n = path.start.n();
  double a0 = area2(path.start);
  for (int s = 0; s < samples; ++s) {
    int idx = static_cast<int>(static_cast<long>(s) * path.steps / samples);
    const Polygon& Z = path.samples[static_cast<std::size_t>(idx)];
    Vec2 x = Z[0];
    Vec2 y = x;
    for (long i = 0; i < n; ++i) y = fit.table.outer_map(y);
    rep.max_closure = std::max(rep.max_closure, norm(y - x));
    rep.area_spread = std::max(rep.area_spread, std::abs(area2(Z) - a0));
  }
  return rep;
}

}  // namespace obl
