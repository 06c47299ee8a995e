#include "scholarmap/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "scholarmap/errors.hpp"

namespace scholarmap {
namespace {

// Mass below which a component is treated as empty in the M-step.
constexpr double kMinComponentMass = 1e-10;

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

double squared_distance(Point2D a, Point2D b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Kahan's fma-based 2x2 determinant; keeps relative accuracy when
// xx*yy and xy^2 nearly cancel.
double determinant(const Sym2& m) {
  const double w = m.xy * m.xy;
  const double e = std::fma(-m.xy, m.xy, w);
  const double f = std::fma(m.xx, m.yy, -w);
  return f + e;
}

double min_eigenvalue(const Sym2& m) {
  const double half_trace = 0.5 * (m.xx + m.yy);
  const double radius = std::hypot(0.5 * (m.xx - m.yy), m.xy);
  const double big = half_trace + radius;
  if (big <= 0.0) return half_trace - radius;
  return determinant(m) / big;
}

// Adds `floor` to the diagonal. If rounding left the smallest eigenvalue
// under the floor, shifts it to a hair above.
Sym2 regularize(Sym2 m, double floor) {
  m.xx += floor;
  m.yy += floor;
  const double target = floor * (1.0 + 1e-9);
  for (int i = 0; i < 8; ++i) {
    const double low = min_eigenvalue(m);
    if (low >= floor) break;
    m.xx += target - low;
    m.yy += target - low;
  }
  return m;
}

Sym2 scatter(std::span<const Point2D> points, std::span<const double> weight, Point2D mean,
             double total) {
  Sym2 s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weight.empty() ? 1.0 : weight[i];
    if (w == 0.0) continue;
    const double dx = points[i].x - mean.x;
    const double dy = points[i].y - mean.y;
    s.xx += w * dx * dx;
    s.xy += w * dx * dy;
    s.yy += w * dy * dy;
  }
  s.xx /= total;
  s.xy /= total;
  s.yy /= total;
  return s;
}

double log_gaussian(Point2D p, Point2D mean, const Sym2& cov) {
  const double det = determinant(cov);
  const double dx = p.x - mean.x;
  const double dy = p.y - mean.y;
  // (d^T S^-1 d) with the explicit 2x2 inverse.
  const double maha = (cov.yy * dx * dx - 2.0 * cov.xy * dx * dy + cov.xx * dy * dy) / det;
  return -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(det) - 0.5 * maha;
}

struct Params {
  std::vector<double> weights;
  std::vector<Point2D> means;
  std::vector<Sym2> covariances;
};

// E-step: fills responsibilities, returns the total log-likelihood.
double expectation(std::span<const Point2D> points, const Params& params, std::vector<double>& resp) {
  const std::size_t k = params.weights.size();
  std::vector<double> log_weight(k);
  for (std::size_t c = 0; c < k; ++c) log_weight[c] = std::log(params.weights[c]);

  double total = 0.0;
  std::vector<double> logp(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      logp[c] = log_weight[c] + log_gaussian(points[i], params.means[c], params.covariances[c]);
      best = std::max(best, logp[c]);
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) sum += std::exp(logp[c] - best);
    const double lse = best + std::log(sum);
    total += lse;
    double row = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      resp[i * k + c] = std::exp(logp[c] - lse);
      row += resp[i * k + c];
    }
    for (std::size_t c = 0; c < k; ++c) resp[i * k + c] /= row;
  }
  return total;
}

void maximization(std::span<const Point2D> points, const std::vector<double>& resp, double floor,
                  Params& params) {
  const std::size_t k = params.weights.size();
  const std::size_t n = points.size();
  std::vector<double> column(n);
  double mass_total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    double mass = 0.0;
    Point2D mean;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = resp[i * k + c];
      mass += column[i];
      mean.x += column[i] * points[i].x;
      mean.y += column[i] * points[i].y;
    }
    if (mass < kMinComponentMass) {
      // Starved component: keep its shape, give it a vanishing weight.
      params.weights[c] = kMinComponentMass;
      mass_total += kMinComponentMass;
      continue;
    }
    mean.x /= mass;
    mean.y /= mass;
    params.means[c] = mean;
    params.covariances[c] = regularize(scatter(points, column, mean, mass), floor);
    params.weights[c] = mass;
    mass_total += mass;
  }
  for (double& w : params.weights) w /= mass_total;
}

Params kmeans_init(std::span<const Point2D> points, int k, std::uint64_t seed, const GmmOptions& options) {
  const std::size_t n = points.size();
  const auto kk = static_cast<std::size_t>(k);
  std::vector<Point2D> centers;
  for (auto idx : kmeanspp_seeds(points, k, seed)) centers.push_back(points[idx]);

  std::vector<std::size_t> assignment(n, 0);
  auto assign = [&] {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points[i], centers[0]);
      for (std::size_t c = 1; c < kk; ++c) {
        const double d = squared_distance(points[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      changed |= assignment[i] != best;
      assignment[i] = best;
    }
    return changed;
  };

  assign();
  for (int iter = 0; iter < options.kmeans_iterations; ++iter) {
    std::vector<Point2D> sums(kk);
    std::vector<std::size_t> counts(kk, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums[assignment[i]].x += points[i].x;
      sums[assignment[i]].y += points[i].y;
      ++counts[assignment[i]];
    }
    for (std::size_t c = 0; c < kk; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its center
      centers[c] = {sums[c].x / static_cast<double>(counts[c]), sums[c].y / static_cast<double>(counts[c])};
    }
    if (!assign()) break;
  }

  Point2D global_mean;
  for (const auto& p : points) {
    global_mean.x += p.x;
    global_mean.y += p.y;
  }
  global_mean.x /= static_cast<double>(n);
  global_mean.y /= static_cast<double>(n);
  const Sym2 global_cov = scatter(points, {}, global_mean, static_cast<double>(n));

  Params params;
  params.weights.assign(kk, 1.0 / static_cast<double>(k));
  params.means = centers;
  params.covariances.resize(kk);
  std::vector<double> member(n);
  for (std::size_t c = 0; c < kk; ++c) {
    double count = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      member[i] = assignment[i] == c ? 1.0 : 0.0;
      count += member[i];
    }
    const Sym2 cov = count > 0.0 ? scatter(points, member, centers[c], count) : global_cov;
    params.covariances[c] = regularize(cov, options.regularization);
  }
  return params;
}

}  // namespace

std::array<double, 2> eigenvalues(const Sym2& m) noexcept {
  const double half_trace = 0.5 * (m.xx + m.yy);
  const double radius = std::hypot(0.5 * (m.xx - m.yy), m.xy);
  return {half_trace + radius, min_eigenvalue(m)};
}

std::vector<std::size_t> kmeanspp_seeds(std::span<const Point2D> points, int k, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw InvalidKError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  std::size_t next = uniform_index(rng, n);
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += taken[i] ? 0.0 : nearest[i];
      if (total > 0.0) {
        const double target = uniform01(rng) * total;
        double cumulative = 0.0;
        next = n;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (taken[i] || nearest[i] == 0.0) continue;
          last_positive = i;
          cumulative += nearest[i];
          if (cumulative > target) {
            next = i;
            break;
          }
        }
        if (next == n) next = last_positive;
      } else {
        // Every remaining point coincides with a center: pick uniformly among the untaken.
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i) {
          if (!taken[i]) free.push_back(i);
        }
        next = free[uniform_index(rng, free.size())];
      }
    }
    chosen.push_back(next);
    taken[next] = true;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], points[next]));
    }
  }
  return chosen;
}

GmmModel fit_gmm(std::span<const Point2D> points, int k, std::uint64_t seed, const GmmOptions& options) {
  const std::size_t n = points.size();
  if (n < 2) throw DegenerateDataError("GMM needs at least 2 points, got " + std::to_string(n));
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw InvalidKError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  const auto kk = static_cast<std::size_t>(k);

  Params params = kmeans_init(points, k, seed, options);

  GmmModel model;
  model.k = k;
  model.seed = seed;
  model.responsibilities.assign(n * kk, 0.0);
  double ll = expectation(points, params, model.responsibilities);
  model.log_likelihood_history.push_back(ll);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    maximization(points, model.responsibilities, options.regularization, params);
    const double next = expectation(points, params, model.responsibilities);
    model.log_likelihood_history.push_back(next);
    ++model.iterations;
    const double gain = next - ll;
    ll = next;
    if (gain < options.tolerance) {
      model.converged = true;
      break;
    }
  }

  model.weights = std::move(params.weights);
  model.means = std::move(params.means);
  model.covariances = std::move(params.covariances);
  model.log_likelihood = ll;
  model.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kk; ++c) {
      if (model.responsibilities[i * kk + c] > model.responsibilities[i * kk + best]) best = c;
    }
    model.labels[i] = static_cast<int>(best);
  }
  return model;
}

Ellipse ellipse_params(Point2D mean, const Sym2& covariance) {
  const Sym2& m = covariance;
  if (!std::isfinite(m.xx) || !std::isfinite(m.xy) || !std::isfinite(m.yy)) {
    throw NotSpdError("covariance has non-finite entries");
  }
  const auto [major, minor] = eigenvalues(m);
  if (!(minor > 0.0)) throw NotSpdError("covariance is not positive-definite");

  Ellipse e;
  e.center = mean;
  e.half_axes = {kEllipseSigmas * std::sqrt(major), kEllipseSigmas * std::sqrt(minor)};
  // Orientation of the dominant eigenvector; atan2 keeps the isotropic case at 0.
  double angle = 0.5 * std::atan2(2.0 * m.xy, m.xx - m.yy);
  if (angle <= -std::numbers::pi / 2) angle += std::numbers::pi;
  e.rotation = angle;
  return e;
}

Sym2 covariance_from_ellipse(const Ellipse& ellipse) noexcept {
  const double a = ellipse.half_axes[0] / kEllipseSigmas;
  const double b = ellipse.half_axes[1] / kEllipseSigmas;
  const double c = std::cos(ellipse.rotation);
  const double s = std::sin(ellipse.rotation);
  return {a * a * c * c + b * b * s * s, (a * a - b * b) * c * s, a * a * s * s + b * b * c * c};
}

std::vector<int> assign_colors(const GmmModel& model) {
  const auto k = static_cast<std::size_t>(model.k);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (model.weights[a] != model.weights[b]) return model.weights[a] > model.weights[b];
    if (model.means[a].x != model.means[b].x) return model.means[a].x < model.means[b].x;
    return a < b;
  });
  std::vector<int> colors(k);
  for (std::size_t rank = 0; rank < k; ++rank) colors[order[rank]] = static_cast<int>(rank);
  return colors;
}

}  // namespace scholarmap
