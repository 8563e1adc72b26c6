#pragma once

#include <utility>
#include <vector>

#include "obl/fit.hpp"
#include "obl/geom.hpp"

namespace obl {

/// Controls of a horizontal path in the frame W_1..W_n: per-frame baseline
/// constants plus a windowed Fourier perturbation that vanishes (with all
/// derivatives) near t = 0 and t = 1, so perturbed arcs join smoothly.
///
/// For rotation number k > 1 the envelope winds k times around the table, and
/// a closed horizontal path yields a single convex table only if it commutes
/// with the deck transformation z_j(t) = z_{j+p}(t + f), p = floor(n/k),
/// f = (n mod k)/k. Setting the deck fields (see with_deck) averages the
/// signal over the order-k deck orbit, so every coefficient vector evaluates
/// to a deck-symmetric control.
struct ControlSignal {
  std::vector<double> baseline;               // size n
  std::vector<std::vector<double>> coeffs;    // n x 2M: (cos 2pi m t, sin 2pi m t)
  int deck_order = 1;                         // k; 1 means no symmetrization
  int deck_shift = 0;                         // p = floor(n/k)
  double deck_frac = 0.0;                     // f = (n mod k)/k

  int n() const { return static_cast<int>(baseline.size()); }
  int modes() const {
    return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().size()) / 2;
  }

  /// Smooth bump, identically 0 on [0, 0.05] and [0.95, 1], peak 1 at t = 1/2.
  static double window(double t);

  /// c_k(t), 1-based k; deck-symmetrized when deck_order > 1.
  double eval(long k, double t) const;

  /// Copy with the deck orbit of the (n, k) family enabled.
  ControlSignal with_deck(int n, int k) const;

  static ControlSignal constants(std::vector<double> baseline, int modes = 0);
};

/// Time-sampled horizontal curve in polygon space.
struct HorizontalPath {
  Polygon start;
  ControlSignal controls;
  int steps = 0;
  std::vector<Polygon> samples;  // steps + 1 polygons at t = i / steps

  double time_at(int i) const { return static_cast<double>(i) / steps; }
  /// Exact velocity sum_k c_k(t) W_k(Z) at sample i.
  PolyTangent velocity_at(int i) const;
};

/// Integrate Z' = sum_k c_k(t) W_k(Z) with classical RK4, N uniform steps.
HorizontalPath integrate(const Polygon& start, const ControlSignal& controls, int N);

/// The circular family of n-periodic orbits with rotation number k:
/// start polygon z_j = e^{2 pi i j k / n} and the constant controls whose
/// integral is z_j(t) = e^{2 pi i k (j + t) / n}, so Z(1) = sigma(Z(0)).
std::pair<Polygon, ControlSignal> circle_baseline(int n, int k);

/// Stacked components of Z(1) - sigma(Z(0)), dimension 2n.
std::vector<double> monodromy_residual(const HorizontalPath& path);

struct ShootReport {
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
};

/// Newton shooting: starting from the circle baseline plus the seed
/// perturbation, adjust the first 2n-1 perturbation coefficients until the
/// monodromy residual drops below 1e-10 * scale. One residual component is
/// discarded against area conservation (the codimension count is 2n-1);
/// all remaining seed coefficients stay fixed.
ControlSignal shoot(int n, int k, const ControlSignal& seed, int max_iter = 30,
                    int N = 2000, ShootReport* report = nullptr);

struct EnvelopeCurve {
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;
  bool convex = false;
};

/// Midpoint locus of the sides of a closed horizontal path: the boundary of
/// the outer billiard table enveloped by the family.
EnvelopeCurve reconstruct_table(const HorizontalPath& path);

struct FamilyReport {
  bool fit_ok = false;
  double fit_residual = 0.0;
  double max_closure = 0.0;   // max_t |T^n(z_1(t)) - z_1(t)|
  double area_spread = 0.0;   // max_t |area2(Z(t)) - area2(Z(0))|
};

/// Fit a support-Fourier table to the reconstructed envelope and check that
/// the path really is a family of n-periodic orbits of that table.
FamilyReport verify_periodic_family(const HorizontalPath& path, int samples,
                                    int K = 64);

}  // namespace obl
