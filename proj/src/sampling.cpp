#include "sepkit/sampling.hpp"

#include <cmath>

#include "sepkit/errors.hpp"
#include "sepkit/parallel.hpp"

namespace sepkit::sampling {

namespace {

void require_shape(Eigen::Index n, Eigen::Index count) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (count < 1) throw DomainError("sample count must be >= 1");
}

// Fills row i of out from a per-point stream, so any row partition across
// workers reproduces the same matrix.
template <typename RowFn>
void fill_rows(Matrix& out, Seed seed, RowFn&& row_fn) {
  const auto count = static_cast<std::size_t>(out.rows());
  parallel_chunks(count, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      row_fn(out.row(static_cast<Eigen::Index>(i)), rng);
    }
  });
}

// Uniform direction times U^(1/n) radius; writes a point of norm <= radius.
template <typename Row>
void ball_point(Row row, Rng& rng, double radius) {
  const Eigen::Index n = row.size();
  double norm2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double g = rng.next_gaussian();
    row[j] = g;
    norm2 += g * g;
  }
  double norm = std::sqrt(norm2);
  if (norm == 0.0) {  // probability 0 in exact arithmetic; keep the origin
    row.setZero();
    return;
  }
  double u = rng.next_unit_open();
  double r = radius * std::pow(u, 1.0 / static_cast<double>(n));
  row *= r / norm;
}

}  // namespace

PointCloud sample_ball(Eigen::Index n, Eigen::Index count, Seed seed) {
  require_shape(n, count);
  PointCloud cloud{Matrix(count, n)};
  fill_rows(cloud.points, seed, [&](auto row, Rng& rng) { ball_point(row, rng, 1.0); });
  return cloud;
}

PointCloud sample_sphere(Eigen::Index n, Eigen::Index count, Seed seed) {
  if (n < 2) throw DomainError("sphere sampling requires dimension >= 2");
  require_shape(n, count);
  PointCloud cloud{Matrix(count, n)};
  fill_rows(cloud.points, seed, [&](auto row, Rng& rng) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        double g = rng.next_gaussian();
        row[j] = g;
        norm2 += g * g;
      }
    } while (norm2 == 0.0);
    row /= std::sqrt(norm2);
  });
  return cloud;
}

PointCloud sample_cube(Eigen::Index n, Eigen::Index count, double side, Seed seed) {
  require_shape(n, count);
  if (!(side > 0.0)) throw DomainError("cube side must be positive");
  PointCloud cloud{Matrix(count, n)};
  fill_rows(cloud.points, seed, [&](auto row, Rng& rng) {
    for (Eigen::Index j = 0; j < n; ++j) row[j] = side * rng.next_unit();
  });
  return cloud;
}

PointCloud sample_gaussian(Eigen::Index n, Eigen::Index count, Seed seed) {
  require_shape(n, count);
  PointCloud cloud{Matrix(count, n)};
  fill_rows(cloud.points, seed, [&](auto row, Rng& rng) {
    for (Eigen::Index j = 0; j < n; ++j) row[j] = rng.next_gaussian();
  });
  return cloud;
}

PointCloud perturb_set(const PointCloud& base, double epsilon, Seed seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("perturbation epsilon must lie in (0,1)");
  if (base.size() < 1) throw DataError("perturb_set: empty base set");
  const double limit = 1.0 - epsilon;
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    double norm = base.points.row(i).norm();
    if (norm > limit + 1e-12)
      throw DataError("perturb_set: base point " + std::to_string(i) + " has norm " +
                      std::to_string(norm) + " > 1 - epsilon");
  }
  PointCloud cloud{Matrix(base.size(), base.dim())};
  cloud.labels = base.labels;
  fill_rows(cloud.points, seed, [&](auto row, Rng& rng) {
    ball_point(row, rng, epsilon);
  });
  cloud.points += base.points;
  return cloud;
}

PointCloud sample(const DistributionSpec& spec, Eigen::Index count, Seed seed) {
  switch (spec.kind) {
    case Family::unit_ball:
      return sample_ball(spec.dimension, count, seed);
    case Family::unit_sphere:
      return sample_sphere(spec.dimension, count, seed);
    case Family::product_cube:
      return sample_cube(spec.dimension, count, spec.cube_side, seed);
    case Family::isotropic_gaussian:
      return sample_gaussian(spec.dimension, count, seed);
    case Family::perturbed_set:
      if (spec.base == nullptr) throw DataError("perturbed-set spec has no base cloud");
      return perturb_set(*spec.base, spec.epsilon, seed);
  }
  throw DomainError("unknown distribution family");
}

Family family_from_name(const std::string& name) {
  if (name == "ball") return Family::unit_ball;
  if (name == "sphere") return Family::unit_sphere;
  if (name == "cube") return Family::product_cube;
  if (name == "gaussian") return Family::isotropic_gaussian;
  if (name == "perturbed") return Family::perturbed_set;
  throw UsageError("unknown distribution '" + name +
                   "' (expected ball|sphere|cube|gaussian|perturbed)");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::unit_ball: return "ball";
    case Family::unit_sphere: return "sphere";
    case Family::product_cube: return "cube";
    case Family::isotropic_gaussian: return "gaussian";
    case Family::perturbed_set: return "perturbed";
  }
  return "?";
}

}  // namespace sepkit::sampling
