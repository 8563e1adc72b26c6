#pragma once

#include <vector>

#include "obl/geom.hpp"
#include "obl/table.hpp"

namespace obl {

struct SupportFit {
  ConvexTable table;
  double max_residual = 0.0;  // worst |h_fit - h_data| over the samples
};

/// Least-squares Fourier fit of the support function of a convex closed
/// curve given boundary points and (unnormalized) tangent directions of a
/// counterclockwise traversal.
SupportFit fit_support_fourier(const std::vector<Vec2>& points,
                               const std::vector<Vec2>& tangents, int K);

/// Symmetric Hausdorff distance between two sampled curves.
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace obl
