#include "sepkit/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sepkit/errors.hpp"

namespace sepkit::corrector {

Corrector fit_corrector(const PointCloud& correct_set, const PointCloud& error_set,
                        Eigen::Index pca_components) {
  if (correct_set.size() < 2)
    throw DataError("corrector needs at least 2 correct-behaviour samples");
  if (error_set.size() < 1) throw DataError("corrector needs at least 1 error sample");
  if (correct_set.dim() != error_set.dim())
    throw DataError("correct and error sets have different feature dimensions");

  Corrector out;
  out.preprocessing = preprocess::fit_whitening_components(correct_set, pca_components);
  PointCloud correct_white = preprocess::apply_whitening(out.preprocessing, correct_set);
  PointCloud errors_white = preprocess::apply_whitening(out.preprocessing, error_set);

  // Whitened within-class covariance is the identity, so the Fisher direction
  // reduces to the difference of class means.
  Vector mean_errors = errors_white.points.colwise().mean().transpose();
  Vector mean_correct = correct_white.points.colwise().mean().transpose();
  out.w = mean_errors - mean_correct;

  // Score each error through the exact code path fires() will use, so the
  // training guarantee (z,w) >= c holds bit-for-bit.
  double min_score = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < error_set.size(); ++i) {
    Vector z = preprocess::apply_whitening(out.preprocessing,
                                           Vector(error_set.points.row(i).transpose()));
    min_score = std::min(min_score, z.dot(out.w));
  }
  out.threshold = min_score;

  out.trained_on.resize(static_cast<std::size_t>(error_set.size()));
  std::iota(out.trained_on.begin(), out.trained_on.end(), Eigen::Index{0});
  return out;
}

namespace {

LegacyDecision suppressed(LegacyDecision decision) {
  decision.decided_positive = false;
  if (decision.score > 0.0) decision.score = -decision.score;
  return decision;
}

}  // namespace

LegacyDecision apply(const Corrector& corrector, const LegacyDecision& decision) {
  if (!decision.decided_positive) return decision;
  if (corrector.fires(decision.feature)) return suppressed(decision);
  return decision;
}

LegacyDecision apply(const Cascade& cascade, const LegacyDecision& decision) {
  if (!decision.decided_positive) return decision;
  if (cascade.fires(decision.feature)) return suppressed(decision);
  return decision;
}

EvaluateResult evaluate(const Corrector& corrector, const PointCloud& flagged_errors,
                        const PointCloud& true_positives) {
  EvaluateResult result;
  for (Eigen::Index i = 0; i < flagged_errors.size(); ++i)
    if (corrector.fires(flagged_errors.points.row(i).transpose())) ++result.fp_removed;
  for (Eigen::Index i = 0; i < true_positives.size(); ++i)
    if (corrector.fires(true_positives.points.row(i).transpose())) ++result.tp_removed;
  return result;
}

std::vector<std::vector<Eigen::Index>> cluster_errors(const PointCloud& errors, Eigen::Index k,
                                                      Seed seed) {
  const Eigen::Index N = errors.size();
  if (k < 1) throw DomainError("cluster count must be >= 1");
  if (k > N) throw DataError("cluster count exceeds the number of errors");
  const Matrix& X = errors.points;

  // Farthest-point seeding: first centre from the seed, each further centre
  // maximises the distance to the chosen set (ties to the lowest index).
  std::vector<Eigen::Index> centers;
  centers.reserve(static_cast<std::size_t>(k));
  Rng rng(seed);
  centers.push_back(static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(N)));
  Vector nearest_sq = (X.rowwise() - X.row(centers[0])).rowwise().squaredNorm();
  while (static_cast<Eigen::Index>(centers.size()) < k) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < N; ++i)
      if (nearest_sq(i) > nearest_sq(best)) best = i;
    centers.push_back(best);
    Vector dist_sq = (X.rowwise() - X.row(best)).rowwise().squaredNorm();
    nearest_sq = nearest_sq.cwiseMin(dist_sq);
  }

  Matrix centroids(k, errors.dim());
  for (Eigen::Index c = 0; c < k; ++c) centroids.row(c) = X.row(centers[c]);

  std::vector<Eigen::Index> assignment(static_cast<std::size_t>(N), -1);
  for (int iteration = 0; iteration < 100; ++iteration) {
    bool changed = false;
    for (Eigen::Index i = 0; i < N; ++i) {
      Eigen::Index best = 0;
      double best_sq = (X.row(i) - centroids.row(0)).squaredNorm();
      for (Eigen::Index c = 1; c < k; ++c) {
        double d = (X.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_sq) {
          best_sq = d;
          best = c;
        }
      }
      if (assignment[static_cast<std::size_t>(i)] != best) {
        assignment[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed) break;
    Matrix sums = Matrix::Zero(k, errors.dim());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < N; ++i) {
      sums.row(assignment[static_cast<std::size_t>(i)]) += X.row(i);
      ++counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];
    }
    for (Eigen::Index c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
  }

  std::vector<std::vector<Eigen::Index>> partition(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < N; ++i)
    partition[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
  return partition;
}

Cascade fit_clustered_cascade(const PointCloud& correct_set, const PointCloud& error_set,
                              Eigen::Index clusters, Eigen::Index pca_components, Seed seed) {
  Cascade cascade;
  auto partition = cluster_errors(error_set, clusters, seed);
  for (const auto& members : partition) {
    if (members.empty()) continue;
    PointCloud subset;
    subset.points.resize(static_cast<Eigen::Index>(members.size()), error_set.dim());
    for (std::size_t row = 0; row < members.size(); ++row)
      subset.points.row(static_cast<Eigen::Index>(row)) = error_set.points.row(members[row]);
    Corrector stage = fit_corrector(correct_set, subset, pca_components);
    stage.trained_on.assign(members.begin(), members.end());
    cascade.stages.push_back(std::move(stage));
  }
  return cascade;
}

}  // namespace sepkit::corrector
