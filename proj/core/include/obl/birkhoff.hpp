#pragma once

#include <vector>

#include "obl/geom.hpp"

namespace obl {

/// The n frame fields W_1..W_n of the dual Birkhoff distribution evaluated
/// at a base polygon. W_k is supported on vertices k and k+1:
///   w_{k,k}   = a_{k+1} (z_k - z_{k-1}),
///   w_{k+1,k} = a_k     (z_{k+2} - z_{k+1}).
struct DistributionFrame {
  Polygon base;
  std::vector<PolyTangent> fields;  // fields[k-1] = W_k
};

DistributionFrame frame(const Polygon& Z);

/// Single frame field W_k (1-based k, cyclic).
PolyTangent frame_field(const Polygon& Z, long k);

/// alpha_i(W) = [z_{i+1} - z_i, w_{i+1} + w_i]  (1-based i, cyclic).
double alpha(const Polygon& Z, long i, const PolyTangent& W);

/// True iff every alpha_i vanishes on W up to tol * diam^3.
bool is_horizontal(const Polygon& Z, const PolyTangent& W, double tol = 1e-12);

/// (sum_i alpha_i(W), dA(W)); the two are negatives of each other.
std::pair<double, double> sum_alpha_vs_dA(const Polygon& Z, const PolyTangent& W);

/// omega_i(V, W) = cross(v_i, w_i)  (1-based i).
double omega_pair(const Polygon& Z, long i, const PolyTangent& V, const PolyTangent& W);

/// d alpha_i (V, W) = 2 (omega_{i+1} - omega_i)(V, W).
double d_alpha_pair(const Polygon& Z, long i, const PolyTangent& V, const PolyTangent& W);

/// Commutator [W_j, W_k] at Z. With h == 0 (default) the bracket is computed
/// from the exact directional derivatives of the polynomial components;
/// with h > 0 it is estimated by composing the four RK4 flows with step h.
PolyTangent lie_bracket(const Polygon& Z, long j, long k, double h = 0.0);

/// Numeric rank of span{W_1..W_n, [W_0,W_1]..[W_{n-1},W_n]} projected onto
/// the tangent space of the area hypersurface. Equals 2n-1 for nondegenerate
/// polygons of nonzero area (bracket growth type (n, 2n-1)).
int bracket_growth_rank(const Polygon& Z, double rel_threshold = 1e-8);

}  // namespace obl
