#include "sepkit/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#include "sepkit/bounds.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/parallel.hpp"
#include "sepkit/sampling.hpp"

namespace sepkit::montecarlo {

namespace {

Seed trial_seed(Seed seed, long long trial) {
  Rng rng(seed, static_cast<std::uint64_t>(trial) + 1);
  return Seed{rng.next_u64()};
}

VerifyResult finish(std::string formula_id, double bound, long long trials,
                    long long successes) {
  VerifyResult result;
  result.formula_id = std::move(formula_id);
  result.bound = bound;
  result.trials = trials;
  result.successes = successes;
  result.empirical = trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
  result.std_error = trials == 0 ? 0.0 : std::sqrt(bound * (1.0 - bound) / trials);
  result.dominated = result.empirical >= bound - 3.0 * result.std_error;
  return result;
}

// Runs one counter per trial across workers; each trial's verdicts are a pure
// function of (seed, trial index).
template <typename TrialFn>
void for_each_trial(long long trials, TrialFn&& fn) {
  parallel_chunks(static_cast<std::size_t>(trials),
                  [&](unsigned, std::size_t b, std::size_t e) {
                    for (std::size_t t = b; t < e; ++t) fn(static_cast<long long>(t));
                  });
}

}  // namespace

VerifyResult verify_prop1(Eigen::Index n, double alpha, Eigen::Index M, long long trials,
                          Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  bounds::BoundResult psi = bounds::prop1_failure(static_cast<double>(M), alpha, n);
  std::atomic<long long> successes{0};
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_ball(n, M + 1, trial_seed(seed, t));
    const auto x = cloud.points.row(M);
    const double budget = alpha * x.squaredNorm();
    bool separable = true;
    for (Eigen::Index i = 0; i < M && separable; ++i)
      separable = x.dot(cloud.points.row(i)) <= budget;
    if (separable) successes.fetch_add(1);
  });
  return finish("prop1", 1.0 - psi.value, trials, successes.load());
}

BallVerify verify_ball(Eigen::Index n, double r, Eigen::Index M, long long trials, Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  bounds::BallBounds theory = bounds::ball_bounds(static_cast<double>(M), n, r);
  std::atomic<long long> ok_single{0};
  std::atomic<long long> ok_pairs{0};
  std::atomic<long long> ok_ortho{0};
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_ball(n, M, trial_seed(seed, t));
    const Matrix& X = cloud.points;
    Vector norms = X.rowwise().norm();
    bool norms_ok = (norms.array() > r).all();

    // Single-point event: last point against the rest.
    const Eigen::Index last = M - 1;
    bool single = norms(last) > r;
    if (single) {
      Vector scores = X * (X.row(last) / norms(last)).transpose();
      for (Eigen::Index i = 0; i < last && single; ++i) single = scores(i) < r;
    }
    if (single) ok_single.fetch_add(1);

    // Pair events over the upper Gram triangle, in tiles.
    bool pairs = norms_ok;
    bool ortho = norms_ok;
    if (pairs || ortho) {
      const Eigen::Index tile = 2048;
      Matrix gram;
      for (Eigen::Index i0 = 0; i0 < M && (pairs || ortho); i0 += tile) {
        const Eigen::Index ri = std::min(tile, M - i0);
        for (Eigen::Index j0 = i0; j0 < M && (pairs || ortho); j0 += tile) {
          const Eigen::Index rj = std::min(tile, M - j0);
          gram.noalias() = X.middleRows(i0, ri) * X.middleRows(j0, rj).transpose();
          for (Eigen::Index a = 0; a < ri; ++a) {
            const Eigen::Index i = i0 + a;
            const Eigen::Index j_begin = std::max(Eigen::Index{0}, i + 1 - j0);
            for (Eigen::Index b = j_begin; b < rj; ++b) {
              const Eigen::Index j = j0 + b;
              const double g = gram(a, b);
              if (g >= r * std::min(norms(i), norms(j))) pairs = false;
              if (g >= r * norms(i) * norms(j)) ortho = false;
            }
          }
        }
      }
    }
    if (pairs) ok_pairs.fetch_add(1);
    if (ortho) ok_ortho.fetch_add(1);
  });
  BallVerify out;
  out.single = finish("ball-single", theory.single.value, trials, ok_single.load());
  out.pairs = finish("ball-pairs", theory.pairs.value, trials, ok_pairs.load());
  out.orthogonality = finish("ball-ortho", theory.orthogonality.value, trials, ok_ortho.load());
  return out;
}

CubeVerify verify_cube(Eigen::Index n, double delta, Eigen::Index M, long long trials,
                       Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  std::vector<double> sigma(static_cast<std::size_t>(n), std::sqrt(1.0 / 12.0));
  bounds::CubeBounds theory = bounds::cube_bounds(sigma, delta, static_cast<double>(M));
  const double R0_sq = static_cast<double>(n) / 12.0;
  const double R0 = std::sqrt(R0_sq);
  const double angle_cap = std::sqrt(1.0 - delta);
  std::atomic<long long> ok_single{0};
  std::atomic<long long> ok_pairs{0};
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_cube(n, M, 1.0, trial_seed(seed, t));
    Matrix X = cloud.points.array() - 0.5;  // centralised coordinates
    Vector norms = X.rowwise().norm();
    bool band = true;
    for (Eigen::Index i = 0; i < M && band; ++i) {
      double ratio = norms(i) * norms(i) / R0_sq;
      band = ratio >= 1.0 - delta && ratio <= 1.0 + delta;
    }
    Matrix gram = X * X.transpose();
    bool single = band;
    const Eigen::Index last = M - 1;
    for (Eigen::Index i = 0; i < last && single; ++i)
      single = gram(i, last) / (R0 * norms(last)) < angle_cap;
    bool pairs = band;
    for (Eigen::Index j = 0; j < M && pairs; ++j)
      for (Eigen::Index i = 0; i < M && pairs; ++i)
        if (i != j) pairs = gram(i, j) / (R0 * norms(j)) < angle_cap;
    if (single) ok_single.fetch_add(1);
    if (pairs) ok_pairs.fetch_add(1);
  });
  CubeVerify out;
  out.single = finish("cube-single", theory.single.value, trials, ok_single.load());
  out.pairs = finish("cube-pairs", theory.pairs.value, trials, ok_pairs.load());
  return out;
}

VerifyResult verify_cluster(Eigen::Index n, double h, double rho, long long trials, Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  bounds::BoundResult psi = bounds::cluster_rejection(h, rho, n);
  std::atomic<long long> successes{0};
  // By rotation invariance the separating direction can be the first axis.
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_ball(n, 1, trial_seed(seed, t));
    if (rho * cloud.points(0, 0) <= h) successes.fetch_add(1);
  });
  return finish("cluster", 1.0 - psi.value, trials, successes.load());
}

VerifyResult verify_quasiortho(Eigen::Index n, Eigen::Index k, long long trials, Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  bounds::BoundResult psi = bounds::quasiortho_miss(static_cast<double>(n),
                                                    static_cast<double>(k));
  std::atomic<long long> separated{0};
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_ball(n, k, trial_seed(seed, t));
    Vector sum = cloud.points.colwise().sum().transpose();
    for (Eigen::Index i = 0; i < k; ++i)
      if (cloud.points.row(i).dot(sum) > 0.0) separated.fetch_add(1);
  });
  return finish("quasiortho", 1.0 - psi.value, trials * k, separated.load());
}

VerifyResult verify_selective(Eigen::Index n, double alpha, Eigen::Index M, long long trials,
                              Seed seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  bounds::BoundResult psi = bounds::prop1_failure(static_cast<double>(M), alpha, n);
  std::atomic<long long> successes{0};
  Vector center = Vector::Zero(n);
  for_each_trial(trials, [&](long long t) {
    PointCloud cloud = sampling::sample_ball(n, M + 1, trial_seed(seed, t));
    bounds::SelectiveNeuron neuron =
        bounds::selective_neuron(cloud.points.row(M).transpose(), center, alpha);
    bool rejects_all = true;
    for (Eigen::Index i = 0; i < M && rejects_all; ++i)
      rejects_all = !neuron.fires(cloud.points.row(i).transpose());
    if (rejects_all) successes.fetch_add(1);
  });
  return finish("selective", 1.0 - psi.value, trials, successes.load());
}

}  // namespace sepkit::montecarlo
