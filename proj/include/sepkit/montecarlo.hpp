#pragma once

#include <string>

#include "sepkit/point_cloud.hpp"
#include "sepkit/rng.hpp"

namespace sepkit::montecarlo {

// Outcome of replaying one separation bound against seeded trials. `bound`
// is the theoretical lower bound on the success probability; `dominated`
// states empirical >= bound - 3 * binomial standard error at that bound.
struct VerifyResult {
  std::string formula_id;
  double bound = 0.0;
  long long trials = 0;
  long long successes = 0;
  double empirical = 0.0;
  double std_error = 0.0;
  bool dominated = false;
};

// Point uniform in the ball vs a sampled M-point set at threshold alpha.
VerifyResult verify_prop1(Eigen::Index n, double alpha, Eigen::Index M, long long trials,
                          Seed seed);

// The three unit-ball events (single point vs rest, all pairs, pairwise
// r-orthogonality) checked on the same sampled clouds.
struct BallVerify {
  VerifyResult single;
  VerifyResult pairs;
  VerifyResult orthogonality;
};
BallVerify verify_ball(Eigen::Index n, double r, Eigen::Index M, long long trials, Seed seed);

// Centered product distribution in the unit cube: norm concentration band
// plus the inner-product conditions, single-point and all-pairs variants.
struct CubeVerify {
  VerifyResult single;
  VerifyResult pairs;
};
CubeVerify verify_cube(Eigen::Index n, double delta, Eigen::Index M, long long trials, Seed seed);

// Rejection of a random stimulus by a margin-h hyperplane in the rho-ball.
VerifyResult verify_cluster(Eigen::Index n, double h, double rho, long long trials, Seed seed);

// Separation of cluster members from the origin by the averaged weight
// vector; each of the k members of every sampled cluster contributes one
// indicator. empirical counts separations, 1 - empirical estimates psi_-.
VerifyResult verify_quasiortho(Eigen::Index n, Eigen::Index k, long long trials, Seed seed);

// Selective-neuron construction (w = x_new, theta = alpha (w,w) for c = 0)
// rejecting all M background stimuli; success probability vs 1 - M/(2 alpha)^n.
VerifyResult verify_selective(Eigen::Index n, double alpha, Eigen::Index M, long long trials,
                              Seed seed);

}  // namespace sepkit::montecarlo
