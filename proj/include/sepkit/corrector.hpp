#pragma once

#include <vector>

#include "sepkit/point_cloud.hpp"
#include "sepkit/preprocess.hpp"
#include "sepkit/rng.hpp"

namespace sepkit::corrector {

// One decision of the legacy classifier: its internal feature vector, the
// reported score, and whether it decided positive.
struct LegacyDecision {
  Vector feature;
  double score = 0.0;
  bool decided_positive = false;
};

// Single-neuron corrector: preprocessing fitted on the correct-behaviour set,
// Fisher weight vector in whitened space, and the min-score threshold. By
// construction every training error z satisfies (z,w) >= c.
struct Corrector {
  preprocess::WhiteningModel preprocessing;
  Vector w;
  double threshold = 0.0;
  std::vector<Eigen::Index> trained_on;

  bool fires(const Vector& feature) const {
    return preprocess::apply_whitening(preprocessing, feature).dot(w) >= threshold;
  }
};

// Ordered corrector stages; any firing stage suppresses a positive decision,
// so the cascade firing set is the union of the stage firing sets.
struct Cascade {
  std::vector<Corrector> stages;

  bool fires(const Vector& feature) const {
    for (const Corrector& stage : stages)
      if (stage.fires(feature)) return true;
    return false;
  }
};

// Center by the mean of the correct set, project onto its leading
// pca_components principal directions, whiten; w is the difference of class
// means in whitened space and the threshold the minimum training-error score.
Corrector fit_corrector(const PointCloud& correct_set, const PointCloud& error_set,
                        Eigen::Index pca_components);

// Positives that fire any corrector stage are suppressed: decided_positive
// becomes false and the score is forced negative. Negatives pass untouched.
LegacyDecision apply(const Corrector& corrector, const LegacyDecision& decision);
LegacyDecision apply(const Cascade& cascade, const LegacyDecision& decision);

struct EvaluateResult {
  Eigen::Index fp_removed = 0;
  Eigen::Index tp_removed = 0;
};

// Counts how many flagged errors and how many true positives receive a
// firing corrector.
EvaluateResult evaluate(const Corrector& corrector, const PointCloud& flagged_errors,
                        const PointCloud& true_positives);

// k-means with farthest-point seeding from the given seed; deterministic.
// Returns the k index sets.
std::vector<std::vector<Eigen::Index>> cluster_errors(const PointCloud& errors, Eigen::Index k,
                                                      Seed seed);

// One corrector per error cluster, assembled into a cascade.
Cascade fit_clustered_cascade(const PointCloud& correct_set, const PointCloud& error_set,
                              Eigen::Index clusters, Eigen::Index pca_components, Seed seed);

}  // namespace sepkit::corrector
