#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "obl/geom.hpp"

namespace obl {

/// Z3-equivariant loop for the n = 3 construction. The unnormalized curve
/// ubar(t) = sum_m chat_m e^{imt} is supported on frequencies m != 0 (mod 3),
/// which makes u + u(. + 2pi/3) + u(. + 4pi/3) vanish identically. The
/// pointwise scale s(t) = [ubar(t), ubar(t + 2pi/3)]^{-1/2} normalizes the
/// pair (u, v) = (s ubar, u(. + 2pi/3)) into SL(2,R): [u, v] = 1.
class EquivariantCurve {
 public:
  using Coeffs = std::map<int, std::complex<double>>;

  explicit EquivariantCurve(Coeffs coeffs);

  /// chat_1 = 1: u traces a circle of squared radius 2/sqrt(3).
  static EquivariantCurve circular();

  const Coeffs& coeffs() const { return coeffs_; }
  std::complex<double> coeff(int m) const;
  EquivariantCurve with_coeff(int m, std::complex<double> c) const;

  Vec2 ubar(double t) const;
  Vec2 dubar(double t) const;

  /// [ubar(t), ubar(t + 2pi/3)]; must stay positive (orientation).
  double pairing(double t) const;
  double scale(double t) const;

  Vec2 u(double t) const;
  Vec2 v(double t) const { return u(t + two_pi_3); }
  /// Exact derivative of u through the product rule in s(t).
  Vec2 du(double t) const;
  Vec2 dv(double t) const { return du(t + two_pi_3); }

  /// Throws InvalidCurveError unless [ubar(t), ubar(t + 2pi/3)] > 0 on a
  /// dense grid.
  void validate(int grid = 1024) const;

  static constexpr double two_pi_3 = 2.0 * 3.14159265358979323846 / 3.0;

 private:
  Coeffs coeffs_;
};

struct PQR {
  double p, q, r;
};

/// p = [u, u'], q = [v, v'], r = [u', v] (= [v', u]).
PQR pqr(const EquivariantCurve& curve, double t);

/// c'(t) = (p - 2q + 2r)/3 v(t) - (q - 2p + 2r)/3 u(t).
Vec2 centroid_velocity(const EquivariantCurve& curve, double t);

struct Monodromy3 {
  Vec2 mon3;  // integral of [u', v] (v - u)
  Vec2 mon2;  // integral of (p - 2q + 2r) v - (q - 2p + 2r) u = 3 mon3
};

/// Both monodromy integrals on a uniform grid of `samples` points.
Monodromy3 monodromy_residual3(const EquivariantCurve& curve, int samples = 4096);

struct Solve3Report {
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
};

/// Newton (central-difference Jacobian, backtracking) on the two designated
/// real coefficient slots until |mon3| < 1e-10. Default slots: Re and Im of
/// the m = 2 coefficient. The m = 1 slots are gauge directions -- scaling and
/// rotating chat_1 acts on the normalized pair (u, v) only through the
/// residual itself, so their Jacobian vanishes at every root -- whereas the
/// residual responds to frequency-2 content at first order.
EquivariantCurve solve_monodromy3(const EquivariantCurve& seed,
                                  std::pair<int, int> free_slots = {2, 2},
                                  int max_iter = 50,
                                  Solve3Report* report = nullptr);

/// One-parameter family of inscribed triangles w_1(t) w_2(t) w_3(t) of
/// area2 = 3 whose vertices trace the single closed curve t -> w_1(t).
struct TriangleFamily {
  EquivariantCurve curve;
  // Complex Fourier coefficients of the mean-zero centroid c(t), m != 0.
  std::map<int, std::complex<double>> c_coeffs;
  bool convex = false;

  Vec2 c(double t) const;
  Vec2 dc(double t) const;
  Vec2 w(int i, double t) const;   // i in {1, 2, 3}
  Vec2 dw(int i, double t) const;  // velocity of w_i
};

/// Integrates c' spectrally into the mean-zero 2pi-periodic centroid and
/// assembles the family. Requires |mon3| < 1e-10 * scale^3.
TriangleFamily build_family(const EquivariantCurve& curve, int samples = 4096);

/// Circumscribed triangle: intersections of the traced-curve tangent lines at
/// w_1(t), w_2(t), w_3(t). Each w_i is the midpoint of its side.
Polygon circumscribed_orbit(const TriangleFamily& family, double t);

}  // namespace obl
