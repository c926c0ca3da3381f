#include "sepkit/preprocess.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sepkit/bounds.hpp"
#include "sepkit/errors.hpp"

namespace sepkit::preprocess {

namespace {

struct EigenDecomposition {
  Vector mean;
  Vector eigenvalues;  // descending
  Matrix components;   // rows, matching eigenvalue order
};

EigenDecomposition decompose(const PointCloud& data) {
  const Eigen::Index N = data.size();
  const Eigen::Index n = data.dim();
  if (N < 2) throw DataError("whitening requires at least 2 points");
  Vector mean = data.points.colwise().mean().transpose();
  Matrix centered = data.points.rowwise() - mean.transpose();
  Matrix covariance = (centered.transpose() * centered) / static_cast<double>(N - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  if (solver.info() != Eigen::Success) throw DataError("eigen decomposition failed");
  // Eigen returns ascending order; flip to descending.
  Vector values = solver.eigenvalues().reverse();
  Matrix vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) vectors.row(i) = solver.eigenvectors().col(n - 1 - i);
  if (values(0) <= 0.0) throw DataError("degenerate data: zero total variance");
  return {std::move(mean), std::move(values), std::move(vectors)};
}

WhiteningModel retain(EigenDecomposition decomposition, Eigen::Index k) {
  WhiteningModel model;
  model.mean = std::move(decomposition.mean);
  model.eigenvalues = decomposition.eigenvalues.head(k);
  model.components = decomposition.components.topRows(k);
  return model;
}

}  // namespace

WhiteningModel fit_whitening(const PointCloud& data, double kappa_max) {
  if (!(kappa_max >= 1.0)) throw DomainError("kappa_max must be >= 1");
  EigenDecomposition decomposition = decompose(data);
  const double threshold = decomposition.eigenvalues(0) / kappa_max;
  Eigen::Index k = 0;
  while (k < decomposition.eigenvalues.size() && decomposition.eigenvalues(k) >= threshold) ++k;
  return retain(std::move(decomposition), k);
}

WhiteningModel fit_whitening_components(const PointCloud& data, Eigen::Index components) {
  if (components < 1) throw DomainError("component count must be >= 1");
  EigenDecomposition decomposition = decompose(data);
  // Never keep numerically-zero directions; 1/sqrt(lambda) must stay finite.
  const double floor = decomposition.eigenvalues(0) * 1e-12;
  Eigen::Index k = 0;
  while (k < decomposition.eigenvalues.size() && k < components &&
         decomposition.eigenvalues(k) > floor)
    ++k;
  return retain(std::move(decomposition), k);
}

PointCloud apply_whitening(const WhiteningModel& model, const PointCloud& data) {
  if (data.dim() != model.input_dim())
    throw DataError("whitening model expects dimension " + std::to_string(model.input_dim()) +
                    ", got " + std::to_string(data.dim()));
  PointCloud out;
  out.labels = data.labels;
  Matrix centered = data.points.rowwise() - model.mean.transpose();
  out.points = centered * model.components.transpose();
  for (Eigen::Index j = 0; j < model.retained(); ++j)
    out.points.col(j) /= std::sqrt(model.eigenvalues(j));
  return out;
}

Vector apply_whitening(const WhiteningModel& model, const Vector& x) {
  if (x.size() != model.input_dim())
    throw DataError("whitening model expects dimension " + std::to_string(model.input_dim()) +
                    ", got " + std::to_string(x.size()));
  Vector projected = model.components * (x - model.mean);
  for (Eigen::Index j = 0; j < model.retained(); ++j)
    projected(j) /= std::sqrt(model.eigenvalues(j));
  return projected;
}

PointCloud project_sphere(const PointCloud& data) {
  PointCloud out;
  out.labels = data.labels;
  out.points = data.points;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double norm = out.points.row(i).norm();
    if (norm == 0.0)
      throw DataError("cannot project zero vector at row " + std::to_string(i) +
                      " onto the sphere");
    out.points.row(i) /= norm;
  }
  return out;
}

double effective_dimension(double p_bar, double alpha) {
  if (!(p_bar > 0.0 && p_bar < 1.0)) throw DomainError("p_bar must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  double lo = 1.0 + 1e-9;
  double hi = 1e4;
  if (bounds::sphere_p(alpha, hi) > p_bar)
    throw DomainError("p_bar is below the formula's range on n in (1, 1e4]");
  if (bounds::sphere_p(alpha, lo) < p_bar)
    throw DomainError("p_bar is above the formula's range on n in (1, 1e4]");
  for (int iteration = 0; iteration < 200 && hi - lo > 1e-9; ++iteration) {
    double mid = 0.5 * (lo + hi);
    if (bounds::sphere_p(alpha, mid) > p_bar)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sepkit::preprocess
