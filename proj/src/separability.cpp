#include "sepkit/separability.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <unordered_map>

#include "sepkit/errors.hpp"
#include "sepkit/parallel.hpp"

namespace sepkit::separability {

bool is_pair_separable(const Vector& x, const Vector& y, double alpha) {
  if (x.size() != y.size()) throw DataError("is_pair_separable: dimension mismatch");
  return x.dot(y) <= alpha * x.squaredNorm();
}

ExcludedBall excluded_ball(const Vector& y, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("excluded ball requires alpha > 0");
  ExcludedBall ball;
  ball.center = y / (2.0 * alpha);
  ball.radius = y.norm() / (2.0 * alpha);
  return ball;
}

namespace {

// Per-worker tallies for one threshold; merged by summation so the result
// is independent of the worker count.
struct Tally {
  std::vector<std::uint8_t> x_violated;        // N
  std::vector<std::int64_t> y_violations;      // N
  std::vector<std::uint8_t> x_violated_star;   // N (class-aware only)
  std::vector<std::int64_t> y_violations_star;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
};

std::vector<int> label_codes(const PointCloud& data) {
  std::vector<int> codes(data.size(), 0);
  std::unordered_map<std::string, int> interned;
  for (Eigen::Index i = 0; i < data.size(); ++i)
    codes[i] = interned.emplace(data.labels[i], static_cast<int>(interned.size())).first->second;
  return codes;
}

}  // namespace

std::vector<SeparabilityReport> analyze(const PointCloud& data, const std::vector<double>& alphas,
                                        const AnalyzeOptions& options) {
  const Eigen::Index N = data.size();
  if (N < 2) throw DataError("separability analysis requires at least 2 points");
  data.check_labels();
  if (options.class_aware && !data.has_labels())
    throw DataError("class-aware analysis requires labels");
  for (double alpha : alphas)
    if (!(alpha > 0.0 && alpha < 1.0))
      throw DomainError("separability threshold must lie in (0,1), got " + std::to_string(alpha));

  const auto A = alphas.size();
  const bool starred = options.class_aware;
  std::vector<int> codes = starred ? label_codes(data) : std::vector<int>{};

  const Matrix& X = data.points;
  Vector sq_norms(N);
  for (Eigen::Index i = 0; i < N; ++i) sq_norms(i) = X.row(i).squaredNorm();

  // Fixed block size keeps the Gram tile products identical for any worker
  // count; workers claim whole blocks from a shared counter.
  const Eigen::Index block =
      std::max<Eigen::Index>(16, std::min<Eigen::Index>(256, (16 << 20) / (8 * std::max<Eigen::Index>(N, 1))));
  const std::size_t n_blocks = static_cast<std::size_t>((N + block - 1) / block);

  unsigned workers = effective_threads();
  std::vector<std::vector<Tally>> tallies(workers);

  std::atomic<std::size_t> next_block{0};
  parallel_chunks(workers, [&](unsigned w, std::size_t, std::size_t) {
    auto& local = tallies[w];
    local.resize(A);
    for (auto& tally : local) {
      tally.x_violated.assign(N, 0);
      tally.y_violations.assign(N, 0);
      if (starred) {
        tally.x_violated_star.assign(N, 0);
        tally.y_violations_star.assign(N, 0);
      }
    }
    Matrix gram;
    for (std::size_t blk = next_block.fetch_add(1); blk < n_blocks;
         blk = next_block.fetch_add(1)) {
      const Eigen::Index row0 = static_cast<Eigen::Index>(blk) * block;
      const Eigen::Index rows = std::min<Eigen::Index>(block, N - row0);
      gram.noalias() = X.middleRows(row0, rows) * X.transpose();
      for (Eigen::Index bi = 0; bi < rows; ++bi) {
        const Eigen::Index i = row0 + bi;
        const double sq = sq_norms(i);
        for (Eigen::Index j = 0; j < N; ++j) {
          if (j == i) continue;
          const double g = gram(bi, j);
          const bool cross = starred && codes[i] != codes[j];
          for (std::size_t a = 0; a < A; ++a) {
            if (g > alphas[a] * sq) {  // x_i not separable from y_j
              local[a].x_violated[i] = 1;
              ++local[a].y_violations[j];
              if (cross) {
                local[a].x_violated_star[i] = 1;
                ++local[a].y_violations_star[j];
              }
              if (options.collect_pairs) local[a].pairs.emplace_back(i, j);
            }
          }
        }
      }
    }
  });

  std::vector<SeparabilityReport> reports(A);
  const double denom = static_cast<double>(N) * static_cast<double>(N - 1);
  for (std::size_t a = 0; a < A; ++a) {
    SeparabilityReport& report = reports[a];
    report.alpha = alphas[a];
    report.total_points = N;
    report.has_starred = starred;
    std::int64_t total = 0;
    std::int64_t total_star = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
      bool violated = false;
      bool violated_star = false;
      for (unsigned w = 0; w < workers; ++w) {
        if (tallies[w].empty()) continue;
        violated |= tallies[w][a].x_violated[i] != 0;
        total += tallies[w][a].y_violations[i];
        if (starred) {
          violated_star |= tallies[w][a].x_violated_star[i] != 0;
          total_star += tallies[w][a].y_violations_star[i];
        }
      }
      report.N_alpha += violated ? 1 : 0;
      report.N_alpha_star += violated_star ? 1 : 0;
    }
    report.nu_alpha = static_cast<double>(report.N_alpha) / static_cast<double>(N);
    report.p_bar = static_cast<double>(total) / denom;
    if (starred) {
      report.nu_alpha_star = static_cast<double>(report.N_alpha_star) / static_cast<double>(N);
      report.p_bar_star = static_cast<double>(total_star) / denom;
    }
    if (options.collect_pairs) {
      for (unsigned w = 0; w < workers; ++w)
        if (!tallies[w].empty())
          report.violating_pairs.insert(report.violating_pairs.end(), tallies[w][a].pairs.begin(),
                                        tallies[w][a].pairs.end());
      std::sort(report.violating_pairs.begin(), report.violating_pairs.end());
    }
  }
  return reports;
}

}  // namespace sepkit::separability
