#include "obl/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace obl {

SupportFit fit_support_fourier(const std::vector<Vec2>& points,
                               const std::vector<Vec2>& tangents, int K) {
  if (points.size() != tangents.size() || points.size() < 8)
    throw PreconditionError("support fit needs matched points and tangents");
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXd A(m, 2 * K + 1);
  Eigen::VectorXd b(m);
  for (int j = 0; j < m; ++j) {
    Vec2 t = normalized(tangents[static_cast<std::size_t>(j)]);
    Vec2 n{t.y, -t.x};  // outward normal of a counterclockwise traversal
    double th = std::atan2(n.y, n.x);
    b(j) = dot(points[static_cast<std::size_t>(j)], n);
    A(j, 0) = 1.0;
    for (int k = 1; k <= K; ++k) {
      A(j, 2 * k - 1) = std::cos(k * th);
      A(j, 2 * k) = std::sin(k * th);
    }
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  double max_res = (A * c - b).cwiseAbs().maxCoeff();
  std::vector<std::array<double, 2>> coeffs(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k)
    coeffs[static_cast<std::size_t>(k - 1)] = {c(2 * k - 1), c(2 * k)};
  return {ConvexTable::support_fourier(c(0), std::move(coeffs)), max_res};
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  auto one_sided = [](const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    double worst = 0.0;
    for (const Vec2& u : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& v : q) best = std::min(best, norm2(u - v));
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace obl
