#include "scholarmap/projection.hpp"

#include <algorithm>
#include <cmath>

#include "scholarmap/errors.hpp"
#include "symmetric_eigen.hpp"

namespace scholarmap {
namespace {

constexpr double kNegligibleVarianceRatio = 1e-10;

void check_columns(std::span<const SparseVector> columns, std::size_t dimension) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (!columns[i].empty() && columns[i].back().term >= dimension) {
      throw DimensionMismatchError("column " + std::to_string(i) + " has term index " +
                                   std::to_string(columns[i].back().term) +
                                   " but the model dimension is " + std::to_string(dimension));
    }
  }
}

double dense_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void scale_to_unit(std::vector<double>& v) {
  const double n = std::sqrt(dense_dot(v, v));
  for (double& x : v) x /= n;
}

void apply_sign_convention(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  if (v[arg] < 0.0) {
    for (double& x : v) x = -x;
  }
}

// Unit vector orthogonal to `pc1`, built from the basis vector on which
// pc1 has the smallest magnitude.
std::vector<double> orthogonal_completion(const std::vector<double>& pc1) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < pc1.size(); ++i) {
    if (std::abs(pc1[i]) < std::abs(pc1[j])) j = i;
  }
  std::vector<double> r(pc1.size());
  for (std::size_t i = 0; i < pc1.size(); ++i) r[i] = -pc1[j] * pc1[i];
  r[j] += 1.0;
  scale_to_unit(r);
  return r;
}

}  // namespace

SparseVector to_sparse(std::span<const double> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) out.push_back({static_cast<std::uint32_t>(i), dense[i]});
  }
  return out;
}

PcaModel fit_pca(std::span<const SparseVector> columns, std::size_t dimension) {
  const std::size_t n = columns.size();
  if (n < 2) throw DegenerateDataError("PCA needs at least 2 points, got " + std::to_string(n));
  if (dimension < 2) {
    throw DegenerateDataError("PCA to 2D needs at least 2 dimensions, got " + std::to_string(dimension));
  }
  check_columns(columns, dimension);

  PcaModel model;
  model.mean.assign(dimension, 0.0);
  for (const auto& column : columns) {
    for (const auto& e : column) model.mean[e.term] += e.value;
  }
  for (double& m : model.mean) m /= static_cast<double>(n);

  // Centered points, one dense row each.
  std::vector<std::vector<double>> centered(n);
  double max_raw = 0.0;
  double max_centered = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = centered[i];
    row.resize(dimension);
    for (std::size_t d = 0; d < dimension; ++d) row[d] = -model.mean[d];
    for (const auto& e : columns[i]) {
      row[e.term] += e.value;
      max_raw = std::max(max_raw, std::abs(e.value));
    }
    for (double x : row) max_centered = std::max(max_centered, std::abs(x));
  }
  if (max_raw == 0.0 || max_centered <= 1e-12 * max_raw) {
    throw DegenerateDataError("all points are identical; total variance is zero");
  }

  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      gram[i * n + j] = gram[j * n + i] = dense_dot(centered[i], centered[j]);
    }
  }
  const auto eig = detail::symmetric_eigen(std::move(gram), n);
  const double lead = eig.values[0];
  if (!(lead > 0.0)) throw DegenerateDataError("total variance is zero");

  for (std::size_t c = 0; c < 2; ++c) {
    const double lambda = eig.values[c];
    auto& component = model.components[c];
    if (c > 0 && lambda <= kNegligibleVarianceRatio * lead) {
      component = orthogonal_completion(model.components[0]);
      model.explained_variance[c] = 0.0;
    } else {
      // Right singular vector: X^T u / sigma, renormalized to absorb rounding.
      component.assign(dimension, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = eig.vector(i, c);
        if (u == 0.0) continue;
        for (std::size_t d = 0; d < dimension; ++d) component[d] += u * centered[i][d];
      }
      if (c > 0) {
        const double overlap = dense_dot(component, model.components[0]);
        for (std::size_t d = 0; d < dimension; ++d) component[d] -= overlap * model.components[0][d];
      }
      scale_to_unit(component);
      model.explained_variance[c] = lambda / static_cast<double>(n - 1);
    }
    apply_sign_convention(component);
  }
  return model;
}

PcaModel fit_pca(const TfidfModel& model) { return fit_pca(model.columns, model.rows()); }

Coords2D project(const PcaModel& model, std::span<const SparseVector> columns) {
  check_columns(columns, model.dimension());
  const double mean_x = dense_dot(model.mean, model.components[0]);
  const double mean_y = dense_dot(model.mean, model.components[1]);

  Coords2D coords;
  coords.points.reserve(columns.size());
  for (const auto& column : columns) {
    double x = 0.0;
    double y = 0.0;
    for (const auto& e : column) {
      x += e.value * model.components[0][e.term];
      y += e.value * model.components[1][e.term];
    }
    coords.points.push_back({x - mean_x, y - mean_y});
  }
  return coords;
}

Coords2D project(const PcaModel& model, const TfidfModel& tfidf) {
  if (tfidf.rows() != model.dimension()) {
    throw DimensionMismatchError("TFIDF model has " + std::to_string(tfidf.rows()) +
                                 " terms but the PCA model has dimension " +
                                 std::to_string(model.dimension()));
  }
  Coords2D coords = project(model, tfidf.columns);
  coords.researcher_ids = tfidf.researcher_ids;
  return coords;
}

}  // namespace scholarmap
