#pragma once

#include "sepkit/point_cloud.hpp"

namespace sepkit::preprocess {

// Fitted whitening transform: center, rotate to the retained principal
// directions, rescale each to unit variance. Components are rows of a
// k x n orthonormal matrix; eigenvalues are strictly positive, descending.
struct WhiteningModel {
  Vector mean;         // n
  Matrix components;   // k x n, orthonormal rows
  Vector eigenvalues;  // k, descending

  Eigen::Index input_dim() const { return mean.size(); }
  Eigen::Index retained() const { return eigenvalues.size(); }
  double condition_number() const {
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues(0) / eigenvalues(eigenvalues.size() - 1);
  }
};

// PCA + multicollinearity control: retains every principal component with
// eigenvalue >= lambda_max / kappa_max, so the retained spectrum has
// condition number <= kappa_max. Covariance uses the 1/(N-1) estimator.
WhiteningModel fit_whitening(const PointCloud& data, double kappa_max = 10.0);

// Retention by count instead of condition number: keeps the leading
// `components` directions (fewer if the trailing eigenvalues are numerically
// zero). Used by the corrector preprocessing.
WhiteningModel fit_whitening_components(const PointCloud& data, Eigen::Index components);

// z = diag(1/sqrt(lambda)) * components * (x - mean), applied row-wise.
PointCloud apply_whitening(const WhiteningModel& model, const PointCloud& data);
Vector apply_whitening(const WhiteningModel& model, const Vector& x);

// Row-wise projection x -> x / ||x||. Zero rows are reported by index.
PointCloud project_sphere(const PointCloud& data);

// Inverts the sphere inseparability estimate: returns the real-valued n
// solving p_bar = (1-alpha^2)^((n-1)/2) / (alpha sqrt(2 pi (n-1))) by
// bisection on n in (1, 1e4). The formula is strictly decreasing in n.
double effective_dimension(double p_bar, double alpha);

}  // namespace sepkit::preprocess
