#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sepkit/point_cloud.hpp"

namespace sepkit::separability {

// Per-threshold separability statistics of a data cloud. N_alpha counts the
// points with at least one violating partner; p_bar averages, over target
// points y, the fraction of the other N-1 points x with (x,y) > alpha (x,x).
// Starred variants count only cross-class violations (labels required).
struct SeparabilityReport {
  double alpha = 0.0;
  Eigen::Index total_points = 0;
  Eigen::Index N_alpha = 0;
  double nu_alpha = 0.0;
  double p_bar = 0.0;
  bool has_starred = false;
  Eigen::Index N_alpha_star = 0;
  double nu_alpha_star = 0.0;
  double p_bar_star = 0.0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> violating_pairs;  // (x, y), optional
};

// The open ball of points NOT Fisher-separable from y at threshold alpha.
struct ExcludedBall {
  Vector center;  // y / (2 alpha)
  double radius = 0.0;  // ||y|| / (2 alpha) = ||center||

  bool contains(const Vector& x) const { return (x - center).norm() < radius; }
};

// Definition of Fisher separability for one ordered pair: true iff
// (x,y) <= alpha (x,x). Boundary equality counts as separable.
bool is_pair_separable(const Vector& x, const Vector& y, double alpha);

ExcludedBall excluded_ball(const Vector& y, double alpha);

struct AnalyzeOptions {
  bool class_aware = false;      // compute starred statistics from labels
  bool collect_pairs = false;    // record violating (x,y) index pairs
};

// Exact O(N^2 n) pairwise scan, blocked and partitioned across workers with
// a deterministic merge. One report per threshold.
std::vector<SeparabilityReport> analyze(const PointCloud& data,
                                        const std::vector<double>& alphas,
                                        const AnalyzeOptions& options = {});

}  // namespace sepkit::separability
