#pragma once

#include <cstddef>
#include <vector>

namespace scholarmap::detail {

/// Eigen-decomposition of a dense symmetric matrix (row-major, n x n).
/// Eigenvalues are sorted in descending order; `vectors` is row-major with
/// eigenvector j stored in column j.
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double vector(std::size_t row, std::size_t j) const { return vectors[row * n + j]; }
};

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes relative to
/// the diagonal. Deterministic: the sweep order is fixed.
SymmetricEigen symmetric_eigen(std::vector<double> matrix, std::size_t n);

}  // namespace scholarmap::detail
