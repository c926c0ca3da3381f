#include "sepkit/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sepkit/errors.hpp"

namespace sepkit::bounds {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// exp(log_a + n * log_b) so that terms like M r^n survive n >= 100.
double pow_term(double log_prefactor, double n, double base) {
  return std::exp(log_prefactor + n * std::log(base));
}

}  // namespace

BoundResult make_lower_probability(double raw, std::string formula_id, std::string note) {
  BoundResult result;
  result.raw = raw;
  result.value = std::clamp(raw, 0.0, 1.0);
  result.vacuous = raw <= 0.0;
  result.formula_id = std::move(formula_id);
  result.note = std::move(note);
  return result;
}

BoundResult make_upper_probability(double raw, std::string formula_id, std::string note) {
  BoundResult result;
  result.raw = raw;
  result.value = std::clamp(raw, 0.0, 1.0);
  result.vacuous = raw >= 1.0;
  result.formula_id = std::move(formula_id);
  result.note = std::move(note);
  return result;
}

BoundResult make_capacity(double raw, std::string formula_id, std::string note) {
  BoundResult result;
  result.raw = raw;
  result.value = std::max(raw, 0.0);
  result.vacuous = raw <= 0.0;
  result.formula_id = std::move(formula_id);
  result.note = std::move(note);
  return result;
}

BoundResult prop1_failure(double card_Y, double alpha, double n) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw DomainError("prop1 requires alpha in (1/2, 1)");
  if (card_Y < 0.0) throw DomainError("prop1 requires |Y| >= 0");
  if (!(n >= 1.0)) throw DomainError("prop1 requires n >= 1");
  double psi = card_Y == 0.0 ? 0.0 : pow_term(std::log(card_Y), -n, 2.0 * alpha);
  return make_upper_probability(psi, "prop1");
}

BoundResult theorem1_failure(double C, double r, double b, double alpha, double n) {
  if (!(C > 0.0)) throw DomainError("theorem1 requires C > 0");
  if (!(2.0 * r * alpha > b && b > 1.0))
    throw DomainError("theorem1 requires 2 r alpha > b > 1");
  double psi = pow_term(std::log(C), n, b / (2.0 * r * alpha));
  return make_upper_probability(psi, "thm1");
}

BallBounds ball_bounds(double M, double n, double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ball bounds require 0 < r < 1");
  if (!(M >= 1.0)) throw DomainError("ball bounds require M >= 1");
  double rho = std::sqrt(1.0 - r * r);
  double r_n = pow_term(0.0, n, r);
  double rho_n = pow_term(0.0, n, rho);
  double pair_count = M * (M - 1.0);
  BallBounds out;
  out.single = make_lower_probability(1.0 - r_n - 0.5 * (M - 1.0) * rho_n, "ball-single");
  out.pairs = make_lower_probability(1.0 - M * r_n - 0.5 * pair_count * rho_n, "ball-pairs");
  out.orthogonality = make_lower_probability(1.0 - M * r_n - pair_count * rho_n, "ball-ortho");
  return out;
}

BallCapacity ball_capacity(double r, double n, double theta) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ball capacity requires 0 < r < 1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("ball capacity requires 0 < theta < 1");
  double rho = std::sqrt(1.0 - r * r);
  double r_n = pow_term(0.0, n, r);
  BallCapacity out;
  if (theta <= r_n) {
    out.single = make_capacity(0.0, "ball-capacity-single");
    out.pairs = make_capacity(0.0, "ball-capacity-pairs");
    return out;
  }
  double single = 2.0 * (theta - r_n) * pow_term(0.0, -n, rho);
  // (r/rho)^n (-1 + sqrt(1 + 2 theta rho^n / r^{2n})); the inner term can
  // overflow, in which case sqrt(1+x) ~ sqrt(x) keeps everything in logs.
  double log_inner = std::log(2.0 * theta) + n * std::log(rho) - 2.0 * n * std::log(r);
  double pairs;
  if (log_inner > 60.0) {  // 1 + x ~ x well past double round-off
    pairs = std::exp(n * std::log(r / rho) + 0.5 * log_inner);
  } else {
    pairs = std::exp(n * std::log(r / rho)) * (-1.0 + std::sqrt(1.0 + std::exp(log_inner)));
  }
  out.single = make_capacity(single, "ball-capacity-single");
  out.pairs = make_capacity(pairs, "ball-capacity-pairs");
  return out;
}

CubeBounds cube_bounds(const std::vector<double>& sigma, double delta, double M) {
  if (sigma.empty()) throw DomainError("cube bounds require at least one coordinate variance");
  if (!(delta > 0.0 && delta < 2.0 / 3.0))
    throw DomainError("cube bounds require 0 < delta < 2/3");
  if (!(M >= 1.0)) throw DomainError("cube bounds require M >= 1");
  double n = static_cast<double>(sigma.size());
  double R0_sq = 0.0;
  for (double s : sigma) {
    if (!(s > 0.0)) throw DomainError("coordinate standard deviations must be positive");
    R0_sq += s * s;
  }
  double ratio = R0_sq * R0_sq / n;  // R0^4 / n
  double norm_term = 2.0 * M * std::exp(-2.0 * delta * delta * ratio);
  double gap = 2.0 - 3.0 * delta;
  double cross = std::exp(-2.0 * ratio * gap * gap);
  CubeBounds out;
  out.single = make_lower_probability(1.0 - norm_term - (M - 1.0) * cross, "cube-single");
  out.pairs = make_lower_probability(1.0 - norm_term - M * (M - 1.0) * cross, "cube-pairs");
  return out;
}

BoundResult logconcave_capacity(const LogConcaveConstants& constants, double n, bool strong,
                                double psi, bool gaussian) {
  if (!(constants.a > 0.0)) throw DomainError("log-concave capacity requires a > 0");
  if (!(constants.base > 1.0)) throw DomainError("log-concave capacity requires base > 1");
  if (strong && !(psi > 0.0 && psi < 1.0))
    throw DomainError("strongly log-concave capacity requires psi in (0,1)");
  double capacity;
  std::string id;
  if (strong) {
    capacity = constants.a * std::sqrt(psi) * pow_term(0.0, n, constants.base);
    id = "strong-logconcave";
  } else {
    capacity = constants.a * std::exp(std::sqrt(n) * std::log(constants.base));
    id = "logconcave";
  }
  std::string note;
  if (gaussian) note = "isotropic Gaussian: strongly log-concave with c=1/8";
  return make_capacity(capacity, std::move(id), std::move(note));
}

SmacParams smac_params_ball() { return {1.0, 1.0}; }

SmacParams smac_params_perturbed(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("perturbed-set epsilon must lie in (0,1)");
  return {1.0, epsilon};
}

SmacParams smac_params_cube() {
  return {1.0 / (2.0 * std::sqrt(kPi)), std::sqrt(2.0 / (kPi * std::exp(1.0)))};
}

double sphere_p(double alpha, double n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sphere_p requires alpha in (0,1)");
  if (!(n > 1.0)) throw DomainError("sphere_p requires n > 1");
  double log_p = 0.5 * (n - 1.0) * std::log1p(-alpha * alpha) - std::log(alpha) -
                 0.5 * std::log(2.0 * kPi * (n - 1.0));
  return std::exp(log_p);
}

double exact_cap_oracle(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("exact_cap_oracle requires alpha in (0,1)");
  if (n < 3) throw DomainError("exact_cap_oracle requires n >= 3");
  // Cap density of t = (x,y) is proportional to (1-t^2)^((n-3)/2). Both
  // integrals are evaluated with the exponent shifted by its maximum on the
  // interval so the integrand stays in [0,1] for any n.
  const double exponent = 0.5 * (n - 3);
  auto integrate = [exponent](double lo, double hi, double shift, int intervals) {
    double h = (hi - lo) / intervals;
    auto f = [&](double t) {
      double one_minus = 1.0 - t * t;
      if (one_minus <= 0.0) return exponent == 0.0 ? std::exp(-shift) : 0.0;
      return std::exp(exponent * std::log(one_minus) - shift);
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  double peak = exponent * std::log1p(-alpha * alpha);  // max of log-density on [alpha,1]
  double numerator = integrate(alpha, 1.0, peak, 40000);
  double denominator = integrate(-1.0, 1.0, 0.0, 40000);
  return std::exp(peak + std::log(numerator) - std::log(denominator));
}

BoundResult cluster_rejection(double h, double rho, double n) {
  if (!(rho > 0.0)) throw DomainError("cluster rejection requires rho > 0");
  if (!(h >= 0.0 && h <= rho)) throw DomainError("cluster rejection requires 0 <= h <= rho");
  double ratio = 1.0 - (h * h) / (rho * rho);
  double psi = ratio <= 0.0 ? 0.0 : 0.5 * std::exp(0.5 * n * std::log(ratio));
  return make_upper_probability(psi, "cluster");
}

BoundResult quasiortho_miss(double n, double k) {
  if (!(k >= 1.0)) throw DomainError("quasiortho requires k >= 1");
  if (!(n >= k)) throw DomainError("quasiortho requires n >= k");
  double tail_at = std::sqrt(n / k);
  double psi = 0.5 * std::erfc(tail_at / std::sqrt(2.0));
  return make_upper_probability(psi, "quasiortho");
}

SelectiveNeuron selective_neuron(const Vector& x_new, const Vector& c, double alpha) {
  if (x_new.size() != c.size())
    throw DataError("selective_neuron: stimulus and centre dimensions differ");
  Vector w = x_new - c;
  if (w.squaredNorm() == 0.0)
    throw DataError("selective_neuron: stimulus coincides with the centre");
  SelectiveNeuron neuron;
  neuron.theta = alpha * w.squaredNorm() + w.dot(c);
  neuron.w = std::move(w);
  return neuron;
}

BoundResult robust_capacity(double alpha, double xi, double n, double psi) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("robust capacity requires alpha in (1/2,1)");
  double xi_max = 1.0 - 1.0 / (2.0 * alpha);
  if (!(xi >= 0.0 && xi < xi_max))
    throw DomainError("robust capacity requires 0 <= xi < 1 - 1/(2 alpha)");
  if (!(psi > 0.0 && psi < 1.0)) throw DomainError("robust capacity requires psi in (0,1)");
  double capacity = psi * pow_term(0.0, -n, 1.0 / (2.0 * alpha) + xi);
  return make_capacity(capacity, "robust-capacity");
}

}  // namespace sepkit::bounds
