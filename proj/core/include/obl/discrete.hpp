#pragma once

#include <array>
#include <vector>

#include "obl/geom.hpp"

namespace obl {

/// A triangle inscribed in the vertices of a convex host polygon.
struct DiscreteState {
  Polygon host;
  std::array<long, 3> triangle;  // 0-based vertex indices into host, distinct

  DiscreteState(Polygon host_, std::array<long, 3> tri);
};

/// Slide triangle vertex `corner` (0, 1 or 2) from its host vertex to the
/// adjacent host vertex in direction `dir` (+1 or -1); legal only when the
/// traversed host edge is parallel to the opposite triangle side.
struct Move {
  int corner = 0;
  int dir = +1;
};

std::vector<Move> legal_moves(const DiscreteState& state, double tol = 1e-10);

DiscreteState apply_move(const DiscreteState& state, Move m);

enum class RotationOutcome { exact_return, relabeled_return, stuck, move_limit };

struct RotationSequence {
  std::vector<DiscreteState> states;  // including the start
  std::vector<Move> moves;
  RotationOutcome outcome = RotationOutcome::move_limit;
};

/// Greedy rotation in the cadence A, C, B, A, C, B, ...: at each step the
/// cadence picks the triangle corner to move (ties beyond the cadence broken
/// by lowest host index); stops on exact return, cyclic relabeling of the
/// start, a stuck state, or the move limit.
RotationSequence rotate_sequence(const DiscreteState& start, int max_moves = 100,
                                 double tol = 1e-10,
                                 bool stop_at_relabeling = true);

/// cross(z_{i+1} - z_i, z_{i+2n+1} - z_{i+n+1}) for i = 0..k-1; all zero iff
/// the (3n+1)-gon admits the full triangle rotation.
std::vector<double> parallel_residuals(const Polygon& P, int n);

struct DeformationSpace {
  int dimension = 0;
  std::vector<PolyTangent> basis;  // orthonormal nullspace directions
  int affine_directions = 0;       // how many basis vectors are affine motions
};

/// SVD nullspace of the k x 2k Jacobian of parallel_residuals at P.
DeformationSpace deformation_space(const Polygon& P, int n,
                                   double threshold = 1e-8);

/// Newton projection of P + step * W back onto the parallelism constraint set.
Polygon project_to_constraints(const Polygon& P, int n, int max_iter = 30);

}  // namespace obl
