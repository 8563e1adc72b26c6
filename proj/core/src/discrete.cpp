#include "obl/discrete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace obl {

namespace {

bool is_convex(const Polygon& P) {
  long n = P.n();
  double sign = 0;
  for (long i = 0; i < n; ++i) {
    double c = cross(P[i + 1] - P[i], P[i + 2] - P[i + 1]);
    if (c == 0) continue;
    if (sign == 0)
      sign = c;
    else if (c * sign < 0)
      return false;
  }
  return sign != 0;
}

double scale2(const Polygon& P) {
  double d = P.diameter();
  return d * d;
}

}  // namespace

DiscreteState::DiscreteState(Polygon host_, std::array<long, 3> tri)
    : host(std::move(host_)), triangle(tri) {
  for (auto& t : triangle) t = static_cast<long>(host.wrap(t));
  if (triangle[0] == triangle[1] || triangle[1] == triangle[2] ||
      triangle[0] == triangle[2])
    throw PreconditionError("triangle vertices must be distinct host vertices");
  if (!is_convex(host)) throw PreconditionError("host polygon must be convex");
}

std::vector<Move> legal_moves(const DiscreteState& state, double tol) {
  std::vector<Move> out;
  double bound = tol * scale2(state.host);
  for (int c = 0; c < 3; ++c) {
    long tc = state.triangle[static_cast<std::size_t>(c)];
    Vec2 opp = state.host[state.triangle[static_cast<std::size_t>((c + 2) % 3)]] -
               state.host[state.triangle[static_cast<std::size_t>((c + 1) % 3)]];
    for (int dir : {+1, -1}) {
      long target = static_cast<long>(state.host.wrap(tc + dir));
      if (target == state.triangle[static_cast<std::size_t>((c + 1) % 3)] ||
          target == state.triangle[static_cast<std::size_t>((c + 2) % 3)])
        continue;
      Vec2 edge = state.host[target] - state.host[tc];
      if (std::abs(cross(edge, opp)) < bound) out.push_back({c, dir});
    }
  }
  return out;
}

DiscreteState apply_move(const DiscreteState& state, Move m) {
  DiscreteState next = state;
  auto& t = next.triangle[static_cast<std::size_t>(m.corner)];
  t = static_cast<long>(state.host.wrap(t + m.dir));
  return next;
}

RotationSequence rotate_sequence(const DiscreteState& start, int max_moves,
                                 double tol, bool stop_at_relabeling) {
  RotationSequence seq;
  seq.states.push_back(start);
  const auto& t0 = start.triangle;
  // Cadence: move A, then C, then B, repeating.
  const int cadence[3] = {0, 2, 1};
  DiscreteState cur = start;
  for (int step = 0; step < max_moves; ++step) {
    std::vector<Move> moves = legal_moves(cur, tol);
    if (moves.empty()) {
      seq.outcome = RotationOutcome::stuck;
      return seq;
    }
    int want = cadence[step % 3];
    std::vector<Move> pick;
    for (const Move& m : moves)
      if (m.corner == want) pick.push_back(m);
    if (pick.empty()) pick = moves;
    std::sort(pick.begin(), pick.end(), [&](const Move& a, const Move& b) {
      if (a.corner != b.corner) return a.corner < b.corner;
      long ta = static_cast<long>(
          cur.host.wrap(cur.triangle[static_cast<std::size_t>(a.corner)] + a.dir));
      long tb = static_cast<long>(
          cur.host.wrap(cur.triangle[static_cast<std::size_t>(b.corner)] + b.dir));
      return ta < tb;
    });
    cur = apply_move(cur, pick.front());
    seq.moves.push_back(pick.front());
    seq.states.push_back(cur);

    const auto& t = cur.triangle;
    if (t == t0) {
      seq.outcome = RotationOutcome::exact_return;
      return seq;
    }
    bool relabeled = (t[0] == t0[1] && t[1] == t0[2] && t[2] == t0[0]) ||
                     (t[0] == t0[2] && t[1] == t0[0] && t[2] == t0[1]);
    if (relabeled && stop_at_relabeling) {
      seq.outcome = RotationOutcome::relabeled_return;
      return seq;
    }
  }
  seq.outcome = RotationOutcome::move_limit;
  return seq;
}

std::vector<double> parallel_residuals(const Polygon& P, int n) {
  long k = P.n();
  if (k != 3L * n + 1)
    throw DomainError("host must be a (3n+1)-gon for the given n");
  std::vector<double> res(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i)
    res[static_cast<std::size_t>(i)] =
        cross(P[i + 1] - P[i], P[i + 2 * n + 1] - P[i + n + 1]);
  return res;
}

namespace {

Eigen::MatrixXd residual_jacobian(const Polygon& P, int n) {
  long k = P.n();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, 2 * k);
  auto add = [&](long row, long vert, Vec2 partial) {
    // d residual / d z_vert = partial (as a covector on (dx, dy)).
    long c = static_cast<long>(P.wrap(vert));
    J(row, 2 * c) += partial.x;
    J(row, 2 * c + 1) += partial.y;
  };
  for (long i = 0; i < k; ++i) {
    Vec2 u = P[i + 1] - P[i];
    Vec2 v = P[i + 2 * n + 1] - P[i + n + 1];
    // residual = cross(u, v); cross((dx,dy), v) = dx v.y - dy v.x.
    add(i, i + 1, {v.y, -v.x});
    add(i, i, {-v.y, v.x});
    add(i, i + 2 * n + 1, {-u.y, u.x});
    add(i, i + n + 1, {u.y, -u.x});
  }
  return J;
}

std::vector<PolyTangent> affine_generators(const Polygon& P) {
  long k = P.n();
  std::vector<PolyTangent> gens(6, PolyTangent(static_cast<std::size_t>(k)));
  for (long i = 0; i < k; ++i) {
    Vec2 z = P[i];
    gens[0][static_cast<std::size_t>(i)] = {1, 0};
    gens[1][static_cast<std::size_t>(i)] = {0, 1};
    gens[2][static_cast<std::size_t>(i)] = {z.x, 0};
    gens[3][static_cast<std::size_t>(i)] = {z.y, 0};
    gens[4][static_cast<std::size_t>(i)] = {0, z.x};
    gens[5][static_cast<std::size_t>(i)] = {0, z.y};
  }
  return gens;
}

}  // namespace

DeformationSpace deformation_space(const Polygon& P, int n, double threshold) {
  std::vector<double> res = parallel_residuals(P, n);
  double bound = 1e-10 * scale2(P);
  for (double r : res)
    if (std::abs(r) > bound)
      throw PreconditionError("polygon does not satisfy the parallelism constraints");

  long k = P.n();
  Eigen::MatrixXd J = residual_jacobian(P, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > threshold * smax) ++rank;

  DeformationSpace out;
  out.dimension = static_cast<int>(2 * k) - rank;
  for (int c = rank; c < 2 * k; ++c) {
    PolyTangent W(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      W[static_cast<std::size_t>(i)] = {svd.matrixV()(2 * i, c),
                                        svd.matrixV()(2 * i + 1, c)};
    out.basis.push_back(std::move(W));
  }

  // Affine motions preserve parallelism; count how much of the nullspace the
  // six affine generators explain.
  Eigen::MatrixXd B(2 * k, out.basis.size());
  for (std::size_t c = 0; c < out.basis.size(); ++c)
    for (long i = 0; i < k; ++i) {
      B(2 * i, static_cast<long>(c)) = out.basis[c][static_cast<std::size_t>(i)].x;
      B(2 * i + 1, static_cast<long>(c)) = out.basis[c][static_cast<std::size_t>(i)].y;
    }
  auto gens = affine_generators(P);
  Eigen::MatrixXd G(2 * k, 6);
  for (int g = 0; g < 6; ++g)
    for (long i = 0; i < k; ++i) {
      G(2 * i, g) = gens[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)].x;
      G(2 * i + 1, g) = gens[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)].y;
    }
  // Project generators onto the nullspace (B is orthonormal) and count the
  // independent projections.
  Eigen::MatrixXd proj = B.transpose() * G;
  Eigen::JacobiSVD<Eigen::MatrixXd> psvd(proj);
  const auto& ps = psvd.singularValues();
  double pmax = ps.size() ? ps(0) : 0.0;
  for (int i = 0; i < ps.size(); ++i)
    if (pmax > 0 && ps(i) > 1e-8 * pmax) ++out.affine_directions;
  return out;
}

Polygon project_to_constraints(const Polygon& P, int n, int max_iter) {
  std::vector<Vec2> z = P.vertices();
  long k = P.n();
  double bound = 1e-12 * scale2(P);
  for (int it = 0; it < max_iter; ++it) {
    Polygon cur(z);
    std::vector<double> res = parallel_residuals(cur, n);
    double worst = 0;
    for (double r : res) worst = std::max(worst, std::abs(r));
    if (worst < bound) return cur;
    Eigen::MatrixXd J = residual_jacobian(cur, n);
    Eigen::VectorXd r(k);
    for (long i = 0; i < k; ++i) r(i) = res[static_cast<std::size_t>(i)];
    Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
    for (long i = 0; i < k; ++i)
      z[static_cast<std::size_t>(i)] += Vec2{step(2 * i), step(2 * i + 1)};
  }
  throw ConvergenceError("constraint projection did not converge");
}

}  // namespace obl
