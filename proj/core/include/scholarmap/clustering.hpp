#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scholarmap/projection.hpp"

namespace scholarmap {

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  bool operator==(const Sym2&) const = default;
};

/// Eigenvalues of a symmetric 2x2 matrix, larger first.
std::array<double, 2> eigenvalues(const Sym2& m) noexcept;

struct GmmOptions {
  double regularization = 1e-6;  // added to every covariance diagonal
  double tolerance = 1e-6;       // stop when the log-likelihood gain drops below this
  int max_iterations = 200;
  int kmeans_iterations = 10;
};

/// Gaussian mixture fitted with EM.
///
/// `log_likelihood_history[0]` is the log-likelihood of the initial
/// parameters; each following entry is recorded after one EM iteration.
/// Responsibilities are row-major n x k.
struct GmmModel {
  int k = 0;
  std::vector<double> weights;
  std::vector<Point2D> means;
  std::vector<Sym2> covariances;
  double log_likelihood = 0.0;
  std::vector<double> log_likelihood_history;
  std::vector<double> responsibilities;
  std::vector<int> labels;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = false;

  double responsibility(std::size_t point, std::size_t component) const {
    return responsibilities[point * static_cast<std::size_t>(k) + component];
  }
};

/// k-means++ seeding from `seed` followed by Lloyd iterations, then EM with
/// full covariances. Labels are argmax responsibilities, ties to the lowest
/// component index. Deterministic for fixed (points, k, seed, options).
///
/// Throws InvalidKError unless 1 <= k <= n, and DegenerateDataError for
/// fewer than two points.
GmmModel fit_gmm(std::span<const Point2D> points, int k, std::uint64_t seed,
                 const GmmOptions& options = {});

/// Indices of the k-means++ starting centers (exposed for testing).
std::vector<std::size_t> kmeanspp_seeds(std::span<const Point2D> points, int k, std::uint64_t seed);

/// 3-sigma ellipse of one mixture component.
struct Ellipse {
  Point2D center;
  std::array<double, 2> half_axes{};  // major first
  double rotation = 0.0;              // major axis angle, radians, in (-pi/2, pi/2]
};

inline constexpr double kEllipseSigmas = 3.0;

/// Throws NotSpdError if `covariance` is not symmetric positive-definite
/// (or not finite).
Ellipse ellipse_params(Point2D mean, const Sym2& covariance);

/// Covariance implied by an ellipse: R diag((a/3)^2, (b/3)^2) R^T.
Sym2 covariance_from_ellipse(const Ellipse& ellipse) noexcept;

/// Palette index for each component: components sorted by descending
/// weight, ties by ascending mean x, then by index.
std::vector<int> assign_colors(const GmmModel& model);

}  // namespace scholarmap
