#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scholarmap/embedding.hpp"

namespace scholarmap {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2D&) const = default;
};

/// Two leading principal directions of a set of researcher columns.
///
/// Invariants: components are orthonormal, explained_variance is
/// non-increasing, and the largest-magnitude entry of each component is
/// positive (ties go to the lowest index).
struct PcaModel {
  std::vector<double> mean;
  std::array<std::vector<double>, 2> components;
  std::array<double, 2> explained_variance{};  // sample variance, 1/(n-1)

  std::size_t dimension() const noexcept { return mean.size(); }
};

struct Coords2D {
  std::vector<Point2D> points;
  std::vector<std::string> researcher_ids;  // aligned with points when known

  std::size_t size() const noexcept { return points.size(); }
};

/// Fits PCA to `columns` (each a point in R^dimension) through the n x n
/// Gram matrix of the centered points, so the cost is O(n^2 d + n^3)
/// rather than O(d^3). A direction with negligible variance (below 1e-10 of
/// the leading one) gets explained variance 0 and is completed to an
/// orthonormal pair deterministically.
///
/// Throws DegenerateDataError for fewer than two points, fewer than two
/// dimensions, or zero total variance; DimensionMismatchError if a column
/// refers to a term index >= dimension.
PcaModel fit_pca(std::span<const SparseVector> columns, std::size_t dimension);
PcaModel fit_pca(const TfidfModel& model);

/// point_i = ((col_i - mean) . PC1, (col_i - mean) . PC2).
Coords2D project(const PcaModel& model, std::span<const SparseVector> columns);
Coords2D project(const PcaModel& model, const TfidfModel& tfidf);

SparseVector to_sparse(std::span<const double> dense);

}  // namespace scholarmap
