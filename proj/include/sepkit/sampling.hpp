#pragma once

#include <cstdint>
#include <string>

#include "sepkit/point_cloud.hpp"
#include "sepkit/rng.hpp"

namespace sepkit::sampling {

// Families used by the separation theorems and their Monte Carlo checks.
enum class Family {
  unit_ball,
  unit_sphere,
  product_cube,
  isotropic_gaussian,
  perturbed_set,
};

struct DistributionSpec {
  Family kind = Family::unit_ball;
  Eigen::Index dimension = 1;
  double cube_side = 1.0;           // product_cube
  double epsilon = 0.0;             // perturbed_set, in (0,1)
  const PointCloud* base = nullptr; // perturbed_set
};

// Uniform in the closed unit n-ball: isotropic Gaussian direction scaled by
// U^(1/n). Rejection sampling is useless here; its acceptance rate decays
// like V_n(B_n)/2^n.
PointCloud sample_ball(Eigen::Index n, Eigen::Index count, Seed seed);

// Uniform on the unit sphere S^{n-1}: normalized isotropic Gaussian draws.
PointCloud sample_sphere(Eigen::Index n, Eigen::Index count, Seed seed);

// Coordinates i.i.d. uniform on [0, side].
PointCloud sample_cube(Eigen::Index n, Eigen::Index count, double side, Seed seed);

// Coordinates i.i.d. standard normal.
PointCloud sample_gaussian(Eigen::Index n, Eigen::Index count, Seed seed);

// point_i = base_i + uniform draw from the epsilon-ball. Every base point
// must satisfy ||base_i|| <= 1 - epsilon so that outputs stay in the unit ball.
PointCloud perturb_set(const PointCloud& base, double epsilon, Seed seed);

PointCloud sample(const DistributionSpec& spec, Eigen::Index count, Seed seed);

Family family_from_name(const std::string& name);
std::string family_name(Family family);

}  // namespace sepkit::sampling
