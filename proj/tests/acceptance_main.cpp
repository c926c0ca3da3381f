// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sepkit/bounds.hpp"
#include "sepkit/corrector.hpp"
#include "sepkit/montecarlo.hpp"
#include "sepkit/neurosim.hpp"
#include "sepkit/preprocess.hpp"
#include "sepkit/sampling.hpp"
#include "sepkit/separability.hpp"
#include "test_support.hpp"

using namespace sepkit;

namespace {

int g_failures = 0;

void report(int criterion, bool passed, const std::string& details) {
  std::printf("%s criterion %d: %s\n", passed ? "PASS" : "FAIL", criterion, details.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. Ball-theorem reproduction at desk scale, plus the shared dominance data
//    for the ball bounds (criterion 2 reuses the same verification run).

montecarlo::BallVerify run_ball_criteria() {
  auto start = std::chrono::steady_clock::now();
  const double r = 1.0 / std::sqrt(2.0);
  montecarlo::BallVerify verify = montecarlo::verify_ball(100, r, 10000, 100, Seed{20260808});

  bounds::BallBounds theory = bounds::ball_bounds(10000, 100, r);
  bool bound_strong = theory.pairs.value >= 1.0 - 1e-7;
  bool enough_trials = verify.pairs.successes >= 99;
  double elapsed = seconds_since(start);

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "M=10^4 n=100 r=1/sqrt2: %lld/%lld trials fully separated (need >= 99), "
                "bound %.10g >= 1-1e-7: %s, %.1fs (target < 120s)",
                verify.pairs.successes, verify.pairs.trials, theory.pairs.value,
                bound_strong ? "yes" : "no", elapsed);
  report(1, enough_trials && bound_strong && elapsed < 120.0, detail);
  return verify;
}

// ---------------------------------------------------------------------------
// 2. Monte Carlo dominance for prop1, ball, cube, cluster, quasiortho at the
//    documented parameter points.

montecarlo::VerifyResult run_dominance(const montecarlo::BallVerify& ball) {
  std::vector<montecarlo::VerifyResult> results;
  results.push_back(montecarlo::verify_prop1(50, 0.8, 1000, 200, Seed{101}));
  results.push_back(ball.single);
  results.push_back(ball.pairs);
  results.push_back(ball.orthogonality);
  auto cube = montecarlo::verify_cube(2000, 0.5, 10, 200, Seed{103});
  results.push_back(cube.single);
  results.push_back(cube.pairs);
  results.push_back(montecarlo::verify_cluster(100, 0.3, 1.0, 10000, Seed{105}));
  montecarlo::VerifyResult quasiortho = montecarlo::verify_quasiortho(400, 100, 200, Seed{107});
  results.push_back(quasiortho);

  bool all_dominated = true;
  std::string detail;
  for (const auto& result : results) {
    all_dominated = all_dominated && result.dominated;
    char entry[96];
    std::snprintf(entry, sizeof(entry), "%s%s emp %.4f vs bound %.4f", detail.empty() ? "" : "; ",
                  result.formula_id.c_str(), result.empirical, result.bound);
    detail += entry;
  }
  report(2, all_dominated, detail);
  return quasiortho;
}

// ---------------------------------------------------------------------------
// 3. Sphere asymptotic vs the exact cap oracle over the stated grid.

void run_sphere_grid() {
  bool ok = true;
  std::string detail = "max rel err:";
  for (int n : {12, 20, 50, 100}) {
    double worst = 0.0;
    for (double alpha : {0.6, 0.8, 0.9, 0.95}) {
      double exact = bounds::exact_cap_oracle(alpha, n);
      double asymptotic = bounds::sphere_p(alpha, n);
      double gap = std::abs(asymptotic / exact - 1.0);
      worst = std::max(worst, gap);
      double tolerance = n >= 20 ? 0.05 : 0.10;
      if (gap > tolerance) {
        char entry[80];
        std::snprintf(entry, sizeof(entry), " [n=%d a=%.2f err %.3f > %.2f]", n, alpha, gap,
                      tolerance);
        detail += entry;
        ok = false;
      }
    }
    char entry[48];
    std::snprintf(entry, sizeof(entry), " n=%d: %.3f", n, worst);
    detail += entry;
  }
  report(3, ok, detail);
}

// ---------------------------------------------------------------------------
// 4. Effective dimension of the sphere-projected mean p_bar.

void run_effective_dimension() {
  double n = preprocess::effective_dimension(7.58e-5, 0.8);
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "effective_dimension(7.58e-5, 0.8) = %.3f (need within [14.5, 16.5])", n);
  report(4, n >= 14.5 && n <= 16.5, detail);
}

// ---------------------------------------------------------------------------
// 5. Separability scan vs an independent brute-force recount.

void run_oracle_equivalence() {
  bool ok = true;
  Rng picker(Seed{109});
  int clouds = 0;
  for (int round = 0; round < 50; ++round) {
    Eigen::Index N = 20 + static_cast<Eigen::Index>(picker.next_u64() % 181);
    Eigen::Index n = 2 + static_cast<Eigen::Index>(picker.next_u64() % 49);
    PointCloud cloud =
        (round % 2 == 0)
            ? sampling::sample_ball(n, N, Seed{5000u + static_cast<std::uint64_t>(round)})
            : sampling::sample_gaussian(n, N, Seed{6000u + static_cast<std::uint64_t>(round)});
    std::vector<double> alphas = {0.4, 0.8, 0.95};
    auto reports = separability::analyze(cloud, alphas);
    for (std::size_t a = 0; a < alphas.size() && ok; ++a) {
      auto oracle = test_support::brute_force_separability(cloud, alphas[a]);
      ok = reports[a].N_alpha == oracle.N_alpha && reports[a].p_bar == oracle.p_bar;
    }
    if (!ok) break;
    ++clouds;
  }

  Matrix docs(3, 2);
  docs << 1, 0, 0.9, 0.3, 0, 1;
  auto hand = separability::analyze(PointCloud{docs}, {0.8});
  bool hand_ok = hand[0].N_alpha == 2 && hand[0].p_bar == 1.0 / 3.0;

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "%d/50 random clouds match the recount exactly; worked example N=2 p_bar=1/3: %s",
                clouds, hand_ok ? "yes" : "no");
  report(5, ok && hand_ok, detail);
}

// ---------------------------------------------------------------------------
// 6. Corrector guarantees: exact training suppression, collateral floor,
//    monotone removal trend.

void run_corrector_criteria() {
  // (a) exact: every training error suppressed across random instances
  bool exact_ok = true;
  for (std::uint64_t seed = 0; seed < 100 && exact_ok; ++seed) {
    Eigen::Index n_errors = 1 + static_cast<Eigen::Index>(seed % 9);
    PointCloud correct = sampling::sample_gaussian(8, 120, Seed{seed * 7 + 1});
    PointCloud errors = sampling::sample_gaussian(8, n_errors, Seed{seed * 7 + 2});
    corrector::Corrector model = corrector::fit_corrector(correct, errors, 8);
    for (Eigen::Index i = 0; i < errors.size(); ++i)
      exact_ok = exact_ok && model.fires(errors.points.row(i).transpose());
  }

  // (b) statistical: one error against a 10^4-point ball background in n=100
  auto start = std::chrono::steady_clock::now();
  int clean_seeds = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PointCloud background = sampling::sample_ball(100, 10000, Seed{seed * 13 + 3});
    PointCloud error = sampling::sample_ball(100, 1, Seed{seed * 13 + 4});
    corrector::Corrector model = corrector::fit_corrector(background, error, 100);
    corrector::EvaluateResult result = corrector::evaluate(model, error, background);
    if (result.tp_removed == 0 && result.fp_removed == 1) ++clean_seeds;
  }
  double elapsed_b = seconds_since(start);

  // (c) trend: the removal curves, averaged over 20 seeded runs of a
  //    10-size nested-subset experiment, are non-decreasing. The per-seed
  //    training floor fp_removed >= |subset| is exact and checked as well.
  bool trend_ok = true;
  double fp_curve[10] = {};
  double tp_curve[10] = {};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PointCloud correct = sampling::sample_gaussian(4, 600, Seed{seed * 17 + 5});
    PointCloud all_errors = sampling::sample_gaussian(4, 40, Seed{seed * 17 + 6});
    all_errors.points *= 0.3;
    all_errors.points.col(0).array() += 5.0;
    for (int step = 0; step < 10; ++step) {
      Eigen::Index size = 4 * (step + 1);
      PointCloud subset{Matrix(all_errors.points.topRows(size))};
      corrector::Corrector model = corrector::fit_corrector(correct, subset, 4);
      corrector::EvaluateResult result = corrector::evaluate(model, all_errors, correct);
      trend_ok = trend_ok && result.fp_removed >= size;
      fp_curve[step] += static_cast<double>(result.fp_removed) / 20.0;
      tp_curve[step] += static_cast<double>(result.tp_removed) / 20.0;
    }
  }
  for (int step = 1; step < 10; ++step)
    trend_ok = trend_ok && fp_curve[step] >= fp_curve[step - 1] &&
               tp_curve[step] >= tp_curve[step - 1];

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "(a) training suppression exact on 100 instances: %s; (b) zero collateral in "
                "%d/100 seeds (need >= 99, %.1fs); (c) monotone removal over nested sets: %s",
                exact_ok ? "yes" : "no", clean_seeds, elapsed_b, trend_ok ? "yes" : "no");
  report(6, exact_ok && clean_seeds >= 99 && trend_ok, detail);
}

// ---------------------------------------------------------------------------
// 7. Plasticity integrator invariants.

void run_neuron_invariants() {
  // unit-sphere invariance over 10^6 steps
  neurosim::StimulusSchedule schedule;
  schedule.window = 1.0;
  schedule.contents.resize(1, 5);
  schedule.contents << 0.5, 0.3, -0.2, 0.6, 0.1;
  schedule.onsets = {{}};
  for (double onset = 0.0; onset < 20000.0; onset += 2.0) schedule.onsets[0].push_back(onset);

  neurosim::NeuronState state;
  state.w = Vector::Constant(5, 1.0).normalized();
  state.theta = 0.05;

  auto start = std::chrono::steady_clock::now();
  neurosim::SimTrace trace =
      neurosim::integrate(state, schedule, 20000.0, {.dt = 0.02, .record_stride = 10});
  double drift = 0.0;
  for (double norm : trace.w_norm) drift = std::max(drift, std::abs(norm - 1.0));
  bool unit_ok = drift < 1e-6;
  double elapsed = seconds_since(start);

  // single-stimulus fixed point
  Vector x(5);
  x << 0.5, -0.3, 0.2, 0.7, -0.1;
  neurosim::StimulusSchedule fixed;
  fixed.window = 1.0;
  fixed.contents = x.transpose();
  fixed.onsets = {{}};
  for (double onset = 0.0; onset < 100.0; onset += 1.5) fixed.onsets[0].push_back(onset);
  neurosim::NeuronState at_fixed_point;
  at_fixed_point.w = x.normalized();
  at_fixed_point.theta = 0.1;
  neurosim::SimTrace fixed_trace =
      neurosim::integrate(at_fixed_point, fixed, 100.0, {.dt = 0.02, .record_weights = true});
  double fp_drift = 0.0;
  for (const Vector& w : fixed_trace.weights)
    fp_drift = std::max(fp_drift, (w - at_fixed_point.w).norm());
  bool fixed_ok = fp_drift < 1e-8;

  // response gating: v = 0 freezes the weights exactly
  neurosim::NeuronState gated;
  gated.w = Vector::Constant(5, 0.5);
  gated.theta = 100.0;
  neurosim::SimTrace gated_trace =
      neurosim::integrate(gated, fixed, 50.0, {.dt = 0.02, .record_weights = true});
  bool frozen_ok = true;
  for (const Vector& w : gated_trace.weights) frozen_ok = frozen_ok && (w - gated.w).norm() == 0.0;

  // step-halving convergence order
  neurosim::NeuronState moving;
  moving.w = (x + Vector::Constant(5, 0.3)).normalized();
  moving.theta = 0.2;
  neurosim::StimulusSchedule aligned;
  aligned.window = 1.0;
  aligned.contents = x.transpose();
  aligned.onsets = {{1.0, 3.0, 5.0}};
  auto final_w = [&](double dt) {
    return neurosim::integrate(moving, aligned, 7.0, {.dt = dt}).final_w;
  };
  Vector coarse = final_w(0.04);
  Vector medium = final_w(0.02);
  Vector fine = final_w(0.01);
  double order = std::log2((coarse - medium).norm() / (medium - fine).norm());
  bool order_ok = order >= 3.5;

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "norm drift %.2e over 1e6 steps (<1e-6), fixed-point drift %.2e (<1e-8), "
                "v=0 freeze exact: %s, convergence order %.2f (>=3.5), %.1fs",
                drift, fp_drift, frozen_ok ? "yes" : "no", order, elapsed);
  report(7, unit_ok && fixed_ok && frozen_ok && order_ok, detail);
}

// ---------------------------------------------------------------------------
// 8. Associative learning, qualitative reproduction of the three-panel study.

void run_association_criteria() {
  auto start = std::chrono::steady_clock::now();
  double margins[3] = {0.0, 0.0, 0.0};
  int successes[3] = {0, 0, 0};
  int positive_margin[3] = {0, 0, 0};
  const Eigen::Index sizes[3] = {2, 4, 12};
  for (int variant = 0; variant < 3; ++variant) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      neurosim::AssociationConfig config;
      config.relevant = sizes[variant];
      config.seed = Seed{seed * 1000 + 17};
      neurosim::AssociationOutcome outcome = neurosim::run_association_experiment(config);
      bool success = outcome.all_new_detected && !outcome.background_false_positive &&
                     outcome.crossed_during_epoch;
      successes[variant] += success ? 1 : 0;
      margins[variant] += outcome.mean_new_margin;
      positive_margin[variant] += outcome.mean_new_margin > 0.0 ? 1 : 0;
    }
    margins[variant] /= 20.0;
  }
  double elapsed = seconds_since(start);

  bool small_sets_learn = successes[0] >= 18 && successes[1] >= 18;
  bool monotone = margins[0] > margins[1] && margins[1] > margins[2] && margins[2] > 0.0;

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "m=2: %d/20 ok, m=4: %d/20 ok (need >= 18); mean margins %.3f > %.3f > %.3f > 0 "
                "(monotone decrease, m=12 still detects); %.1fs (target < 300s)",
                successes[0], successes[1], margins[0], margins[1], margins[2], elapsed);
  report(8, small_sets_learn && monotone && elapsed < 300.0, detail);
}

// ---------------------------------------------------------------------------
// 9. Quasiorthogonality constant: empirical miss rate vs the exact tail.

void run_quasiortho_constant(const montecarlo::VerifyResult& quasiortho) {
  double empirical_miss = 1.0 - quasiortho.empirical;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "empirical psi- = %.4f over %lld draws, target 0.0228 +- 0.01",
                empirical_miss, quasiortho.trials);
  report(9, std::abs(empirical_miss - 0.0228) <= 0.01, detail);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  montecarlo::BallVerify ball = run_ball_criteria();
  montecarlo::VerifyResult quasiortho = run_dominance(ball);
  run_sphere_grid();
  run_effective_dimension();
  run_oracle_equivalence();
  run_corrector_criteria();
  run_neuron_invariants();
  run_association_criteria();
  run_quasiortho_constant(quasiortho);
  std::printf("acceptance: %d of 9 criteria passed in %.1fs\n", 9 - g_failures,
              seconds_since(start));
  return g_failures == 0 ? 0 : 1;
}
