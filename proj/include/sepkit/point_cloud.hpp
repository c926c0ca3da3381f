#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "sepkit/errors.hpp"

namespace sepkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Universal data carrier: N points as rows of an N x n matrix, with an
// optional per-point class label (used by the class-aware statistics).
struct PointCloud {
  Matrix points;                    // N x n
  std::vector<std::string> labels;  // empty, or size N

  PointCloud() = default;
  explicit PointCloud(Matrix pts) : points(std::move(pts)) {}

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  bool has_labels() const { return !labels.empty(); }

  void check_labels() const {
    if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != points.rows())
      throw DataError("label count " + std::to_string(labels.size()) +
                      " does not match point count " + std::to_string(points.rows()));
  }
};

}  // namespace sepkit
