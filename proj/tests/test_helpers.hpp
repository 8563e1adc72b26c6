#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "obl/geom.hpp"
#include "obl/table.hpp"

namespace oblt {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Random star-shaped nondegenerate n-gon around the unit circle.
inline obl::Polygon random_polygon(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  for (;;) {
    std::vector<obl::Vec2> z;
    for (int i = 0; i < n; ++i) {
      double a = kTwoPi * i / n + jitter(rng);
      double r = 1.0 + jitter(rng);
      z.push_back({r * std::cos(a), r * std::sin(a)});
    }
    obl::Polygon P(std::move(z));
    if (obl::is_nondegenerate(P, 1e-3)) return P;
  }
}

/// Random tangent vector with entries in [-1, 1].
inline obl::PolyTangent random_tangent(long n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  obl::PolyTangent W(static_cast<std::size_t>(n));
  for (auto& w : W) w = {u(rng), u(rng)};
  return W;
}

/// Random valid support-Fourier table: unit base circle plus decaying
/// harmonics, retried until the convexity check passes.
inline obl::ConvexTable random_table(std::mt19937& rng, int K = 6) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<std::array<double, 2>> coeffs;
    for (int k = 2; k <= K; ++k)
      coeffs.push_back({0.3 * u(rng) / (k * k * k), 0.3 * u(rng) / (k * k * k)});
    try {
      return obl::ConvexTable::support_fourier(1.0, std::move(coeffs));
    } catch (const obl::InvalidTableError&) {
    }
  }
}

/// Random exterior point at distance in [1.3, 3] x table scale.
inline obl::Vec2 random_exterior(const obl::ConvexTable& table, std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  std::uniform_real_distribution<double> rad(1.3, 3.0);
  double a = ang(rng);
  return rad(rng) * table.scale() * obl::Vec2{std::cos(a), std::sin(a)};
}

}  // namespace oblt
