#pragma once

#include <string>
#include <vector>

#include "sepkit/point_cloud.hpp"

namespace sepkit::bounds {

// A probability or capacity estimate from one of the closed-form separation
// results. `value` is clamped to its natural range; `raw` keeps the
// unclamped number and `vacuous` marks bounds that carry no information
// (failure probability >= 1, success probability <= 0, capacity <= 0).
struct BoundResult {
  double value = 0.0;
  double raw = 0.0;
  bool vacuous = false;
  std::string formula_id;
  std::string note;
};

// Lower bounds on success probability are vacuous at raw <= 0; upper bounds
// on failure probability are vacuous at raw >= 1.
BoundResult make_lower_probability(double raw, std::string formula_id, std::string note = {});
BoundResult make_upper_probability(double raw, std::string formula_id, std::string note = {});
BoundResult make_capacity(double raw, std::string formula_id, std::string note = {});

// Growth constants for the log-concave capacity results. The source results
// leave a, gamma/eta unspecified, so callers must supply them.
struct LogConcaveConstants {
  double a = 1.0;     // prefactor, > 0
  double base = 2.0;  // gamma (log-concave) or eta (strongly log-concave), > 1
  double c = 0.0;     // strong-convexity constant, informational
};

// Failure probability psi = |Y| / (2 alpha)^n for a point uniform in the
// unit ball against an arbitrary finite Y in the ball; requires alpha > 1/2.
BoundResult prop1_failure(double card_Y, double alpha, double n);

// psi < C (b / (2 r alpha))^n for densities bounded by C / (r^n V_n);
// requires 2 r alpha > b > 1.
BoundResult theorem1_failure(double C, double r, double b, double alpha, double n);

// The three lower bounds for M i.i.d. points uniform in the unit ball,
// 0 < r < 1, rho = sqrt(1 - r^2): single point vs rest, all pairs, and
// pairwise epsilon-orthogonality with epsilon = r.
struct BallBounds {
  BoundResult single;
  BoundResult pairs;
  BoundResult orthogonality;
};
BallBounds ball_bounds(double M, double n, double r);

// Largest M keeping the ball bounds above 1 - theta: the single-point and
// all-pairs capacities. Returns 0 when theta <= r^n.
struct BallCapacity {
  BoundResult single;
  BoundResult pairs;
};
BallCapacity ball_capacity(double r, double n, double theta);

// Product distribution in a cube (coordinates bounded in [0,1], centralised),
// R0^2 = sum of coordinate variances, 0 < delta < 2/3. Returns the
// single-point and all-pairs probability lower bounds.
struct CubeBounds {
  BoundResult single;
  BoundResult pairs;
};
CubeBounds cube_bounds(const std::vector<double>& sigma, double delta, double M);

// M <= a gamma^sqrt(n) (log-concave) or M <= a sqrt(psi) eta^n (strongly
// log-concave). Purely parametric; `gaussian` records the c = 1/8 context.
BoundResult logconcave_capacity(const LogConcaveConstants& constants, double n, bool strong,
                                double psi, bool gaussian = false);

// Smeared-absolute-continuity density constants (C, r) per family.
struct SmacParams {
  double C = 1.0;
  double r = 1.0;
};
SmacParams smac_params_ball();
SmacParams smac_params_perturbed(double epsilon);
SmacParams smac_params_cube();  // C = 1/(2 sqrt(pi)), r = sqrt(2/(pi e)) supremum

// Asymptotic inseparability probability on the unit sphere,
// p_y(alpha) ~ (1 - alpha^2)^((n-1)/2) / (alpha sqrt(2 pi (n-1))).
// Accepts real-valued n > 1 so it can be inverted for effective dimension.
double sphere_p(double alpha, double n);

// Exact spherical-cap measure P((x,y) > alpha) for x uniform on S^{n-1},
// by numerical integration of the cap density (1-t^2)^((n-3)/2). Independent
// check of the asymptotic formula above.
double exact_cap_oracle(double alpha, int n);

// psi_1 = 0.5 (1 - h^2/rho^2)^(n/2): probability that a random stimulus from
// the radius-rho ball falls on the cluster side of the margin-h hyperplane.
BoundResult cluster_rejection(double h, double rho, double n);

// psi_- = upper tail of the standard normal at sqrt(n/k): probability that a
// cluster member fails separation from the origin by the averaged weights.
BoundResult quasiortho_miss(double n, double k);

// Selective threshold neuron for a new stimulus against mean stimulus c:
// w = x_new - c, theta = alpha (w,w) + (w,c). Fires on x iff (w,x) > theta.
struct SelectiveNeuron {
  Vector w;
  double theta = 0.0;
  bool fires(const Vector& x) const { return w.dot(x) > theta; }
};
SelectiveNeuron selective_neuron(const Vector& x_new, const Vector& c, double alpha);

// Capacity under weight perturbations ||w' - w||/rho < xi:
// M < psi (1/(2 alpha) + xi)^(-n), with 0 <= xi < 1 - 1/(2 alpha).
BoundResult robust_capacity(double alpha, double xi, double n, double psi);

}  // namespace sepkit::bounds
