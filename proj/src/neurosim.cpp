#include "sepkit/neurosim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepkit/errors.hpp"
#include "sepkit/sampling.hpp"

namespace sepkit::neurosim {

void StimulusSchedule::validate() const {
  if (!(window > 0.0)) throw DomainError("stimulus window must be positive");
  if (contents.rows() != static_cast<Eigen::Index>(onsets.size()))
    throw DataError("schedule has " + std::to_string(contents.rows()) + " stimuli but " +
                    std::to_string(onsets.size()) + " onset lists");
  for (std::size_t i = 0; i < onsets.size(); ++i) {
    for (std::size_t j = 0; j + 1 < onsets[i].size(); ++j) {
      if (!(onsets[i][j + 1] > onsets[i][j] + window))
        throw DataError("presentations of stimulus " + std::to_string(i) +
                        " overlap: frames of the same stimulus must be disjoint");
    }
  }
}

void StimulusSchedule::present_synchronized(const std::vector<Eigen::Index>& group,
                                            double onset) {
  for (Eigen::Index i : group) onsets.at(static_cast<std::size_t>(i)).push_back(onset);
}

Vector input_signal(const StimulusSchedule& schedule, double t) {
  Vector signal = Vector::Zero(schedule.dim());
  for (std::size_t i = 0; i < schedule.onsets.size(); ++i)
    for (double onset : schedule.onsets[i])
      if (t >= onset && t <= onset + schedule.window)
        signal += schedule.contents.row(static_cast<Eigen::Index>(i));
  return signal;
}

Response response(const NeuronState& state, const Vector& signal) {
  if (signal.size() != state.w.size()) throw DataError("signal dimension mismatch");
  Response out;
  if (state.c.size() == 0) {
    out.y = state.w.dot(signal);
  } else {
    if (state.c.size() != signal.size()) throw DataError("centre dimension mismatch");
    out.y = state.w.dot(signal - state.c);
  }
  out.v = std::max(0.0, out.y - state.theta);
  return out;
}

namespace {

// Piecewise-constant signal timeline: the active stimulus sum between
// consecutive window edges, with edges snapped to the step grid.
struct Timeline {
  std::vector<long> edges;       // edge step indices, ascending, first is 0
  std::vector<Vector> signals;   // signal on [edges[k], edges[k+1])
  long total_steps = 0;

  const Vector& at_step(std::size_t piece) const { return signals[piece]; }
};

Timeline build_timeline(const StimulusSchedule& schedule, double t_end, double dt) {
  Timeline timeline;
  timeline.total_steps = std::lround(t_end / dt);
  if (timeline.total_steps < 1) throw DomainError("t_end must cover at least one step");

  struct Event {
    long step;
    Eigen::Index stimulus;
    int delta;
  };
  std::vector<Event> events;
  const long window_steps = std::lround(schedule.window / dt);
  for (std::size_t i = 0; i < schedule.onsets.size(); ++i) {
    for (double onset : schedule.onsets[i]) {
      long start = std::lround(onset / dt);
      long stop = start + window_steps;
      if (stop <= 0 || start >= timeline.total_steps) continue;
      events.push_back({std::max(0L, start), static_cast<Eigen::Index>(i), +1});
      if (stop < timeline.total_steps) events.push_back({stop, static_cast<Eigen::Index>(i), -1});
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.step != b.step ? a.step < b.step : a.stimulus < b.stimulus;
  });

  std::vector<int> active(static_cast<std::size_t>(schedule.stimulus_count()), 0);
  auto signal_now = [&]() {
    Vector s = Vector::Zero(schedule.dim());
    for (std::size_t i = 0; i < active.size(); ++i)
      if (active[i] > 0) s += schedule.contents.row(static_cast<Eigen::Index>(i));
    return s;
  };

  std::size_t cursor = 0;
  long step = 0;
  timeline.edges.push_back(0);
  while (cursor < events.size() && events[cursor].step == 0) {
    active[static_cast<std::size_t>(events[cursor].stimulus)] += events[cursor].delta;
    ++cursor;
  }
  timeline.signals.push_back(signal_now());
  while (cursor < events.size()) {
    step = events[cursor].step;
    while (cursor < events.size() && events[cursor].step == step) {
      active[static_cast<std::size_t>(events[cursor].stimulus)] += events[cursor].delta;
      ++cursor;
    }
    timeline.edges.push_back(step);
    timeline.signals.push_back(signal_now());
  }
  return timeline;
}

struct Derivative {
  Vector dw;
  Vector dc;
  double dT = 0.0;
};

// Right-hand side of the plasticity dynamics for a fixed signal S.
Derivative rhs(const Vector& w, const Vector& c, const Vector& S, double theta,
               double alpha_rate, double a_rate, bool centered) {
  Derivative d;
  Vector effective = centered ? Vector(S - c) : S;
  double y = w.dot(effective);
  double v = std::max(0.0, y - theta);
  d.dw = (alpha_rate * v * y) * (effective - w * y);
  if (centered) d.dc = a_rate * (S - c);
  d.dT = v * y * y;
  return d;
}

}  // namespace

SimTrace integrate(const NeuronState& state, const StimulusSchedule& schedule, double t_end,
                   const IntegrateOptions& options) {
  schedule.validate();
  if (state.w.size() != schedule.dim()) throw DataError("weight dimension mismatch");
  if (!(state.alpha_rate > 0.0)) throw DomainError("plasticity rate must be positive");
  if (options.dt < 0.0) throw DomainError("dt must be positive");
  double dt = options.dt > 0.0 ? options.dt : schedule.window / 50.0;
  if (dt > schedule.window / 20.0 + 1e-12)
    throw DomainError("dt must not exceed window/20 to resolve stimulus frames");
  if (options.record_stride < 1) throw DomainError("record stride must be >= 1");

  const bool centered = state.c.size() != 0 || state.a_rate > 0.0;
  Vector w = state.w;
  Vector c = centered ? (state.c.size() != 0 ? state.c : Vector(Vector::Zero(schedule.dim())))
                      : Vector();
  if (centered && c.size() != schedule.dim()) throw DataError("centre dimension mismatch");
  double nr_time = 0.0;

  Timeline timeline = build_timeline(schedule, t_end, dt);

  SimTrace trace;
  trace.tracked = options.tracked;
  const long total = timeline.total_steps;
  const long recorded = total / options.record_stride + 1;
  trace.t.reserve(recorded);
  trace.y.reserve(recorded);
  trace.v.reserve(recorded);
  trace.w_norm.reserve(recorded);
  trace.nr_time.reserve(recorded);
  Matrix tracked_contents(static_cast<Eigen::Index>(options.tracked.size()), schedule.dim());
  for (std::size_t k = 0; k < options.tracked.size(); ++k)
    tracked_contents.row(static_cast<Eigen::Index>(k)) = schedule.contents.row(options.tracked[k]);
  std::vector<double> tracked_rows;

  std::size_t piece = 0;
  auto advance_piece = [&](long step) {
    while (piece + 1 < timeline.edges.size() && step >= timeline.edges[piece + 1]) ++piece;
  };
  auto record = [&](long step) {
    if (step % options.record_stride != 0 && step != total) return;
    const Vector& S = timeline.signals[piece];
    Vector effective = centered ? Vector(S - c) : S;
    double y = w.dot(effective);
    trace.t.push_back(step * dt);
    trace.y.push_back(y);
    trace.v.push_back(std::max(0.0, y - state.theta));
    trace.w_norm.push_back(w.norm());
    trace.nr_time.push_back(nr_time);
    if (tracked_contents.rows() > 0) {
      Vector solo = tracked_contents * w;
      if (centered) solo -= tracked_contents * c;
      for (Eigen::Index k = 0; k < solo.size(); ++k) tracked_rows.push_back(solo(k));
    }
    if (options.record_weights) trace.weights.push_back(w);
  };

  record(0);
  for (long step = 0; step < total; ++step) {
    advance_piece(step);
    const Vector& S = timeline.signals[piece];

    Derivative k1 = rhs(w, c, S, state.theta, state.alpha_rate, state.a_rate, centered);
    Vector w2 = w + 0.5 * dt * k1.dw;
    Vector c2 = centered ? Vector(c + 0.5 * dt * k1.dc) : Vector();
    Derivative k2 = rhs(w2, c2, S, state.theta, state.alpha_rate, state.a_rate, centered);
    Vector w3 = w + 0.5 * dt * k2.dw;
    Vector c3 = centered ? Vector(c + 0.5 * dt * k2.dc) : Vector();
    Derivative k3 = rhs(w3, c3, S, state.theta, state.alpha_rate, state.a_rate, centered);
    Vector w4 = w + dt * k3.dw;
    Vector c4 = centered ? Vector(c + dt * k3.dc) : Vector();
    Derivative k4 = rhs(w4, c4, S, state.theta, state.alpha_rate, state.a_rate, centered);

    w += (dt / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
    if (centered) c += (dt / 6.0) * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc);
    nr_time += (dt / 6.0) * (k1.dT + 2.0 * k2.dT + 2.0 * k3.dT + k4.dT);

    // Advance the piece before recording so y at an edge uses the new window.
    advance_piece(step + 1);
    record(step + 1);
  }

  if (!options.tracked.empty()) {
    const Eigen::Index cols = static_cast<Eigen::Index>(options.tracked.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(tracked_rows.size()) / cols;
    trace.tracked_responses = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                       Eigen::RowMajor>>(
        tracked_rows.data(), rows, cols);
  }
  trace.final_w = w;
  trace.final_c = centered ? c : Vector(Vector::Zero(schedule.dim()));
  trace.final_nr_time = nr_time;
  return trace;
}

AssociationConditions check_association(const Vector& w0, double theta0, double theta,
                                        const PointCloud& relevant,
                                        const PointCloud& background, bool strict) {
  if (relevant.size() < 1) throw DataError("relevant set must contain the known stimulus");
  if (!(theta0 > theta && theta > 0.0))
    throw DomainError("association requires theta0 > theta > 0");
  if (std::abs(w0.norm() - 1.0) > 1e-8)
    throw DataError("initial weight vector must be normalised");

  Vector sum = relevant.points.colwise().sum().transpose();
  double sum_norm = sum.norm();
  if (sum_norm == 0.0) throw DataError("relevant contents sum to zero: mean direction undefined");
  Vector w_bar = sum / sum_norm;

  AssociationConditions out;
  out.strict = strict;
  out.gamma = std::sqrt((1.0 + w0.dot(w_bar)) / 2.0);
  const double background_cap = strict ? out.gamma * theta : theta;

  const Vector x0 = relevant.points.row(0).transpose();
  out.known_detected = w0.dot(x0) > theta0;

  out.group_response = true;
  if (relevant.size() > 1) {
    const double floor = -(theta0 - theta) / static_cast<double>(relevant.size() - 1);
    for (Eigen::Index i = 1; i < relevant.size(); ++i)
      out.group_response = out.group_response && w0.dot(relevant.points.row(i)) > floor;
  }

  out.relevant_detected = true;
  for (Eigen::Index i = 0; i < relevant.size(); ++i)
    out.relevant_detected = out.relevant_detected && w_bar.dot(relevant.points.row(i)) > theta;

  out.background_silent_w0 = true;
  out.background_silent_wbar = true;
  for (Eigen::Index i = 0; i < background.size(); ++i) {
    out.background_silent_w0 =
        out.background_silent_w0 && w0.dot(background.points.row(i)) < background_cap;
    out.background_silent_wbar =
        out.background_silent_wbar && w_bar.dot(background.points.row(i)) < background_cap;
  }
  return out;
}

AssociationOutcome run_association_experiment(const AssociationConfig& config) {
  if (config.relevant < 1) throw DomainError("need at least one relevant stimulus");
  if (!(config.theta0 > config.theta && config.theta > 0.0))
    throw DomainError("association requires theta0 > theta > 0");

  // Disjoint sub-seeds for the two content sets.
  Rng derive(config.seed);
  Seed seed_relevant{derive.next_u64()};
  Seed seed_background{derive.next_u64()};
  PointCloud relevant = sampling::sample_ball(config.n, config.relevant, seed_relevant);
  PointCloud background = sampling::sample_ball(config.n, config.background, seed_background);

  const Vector x0 = relevant.points.row(0).transpose();
  Vector w0 = x0 / x0.norm();  // selective direction for centre 0, normalised

  // Schedule: the known stimulus alone, then the fully synchronized group.
  StimulusSchedule schedule;
  schedule.window = config.window;
  schedule.contents = relevant.points;
  schedule.onsets.assign(static_cast<std::size_t>(config.relevant), {});
  const double period = config.window + config.gap;
  double t = config.gap;
  for (int p = 0; p < config.pre_presentations; ++p, t += period)
    schedule.onsets[0].push_back(t);
  const double epoch_begin = t;
  std::vector<Eigen::Index> group(static_cast<std::size_t>(config.relevant));
  for (Eigen::Index i = 0; i < config.relevant; ++i) group[static_cast<std::size_t>(i)] = i;
  for (int p = 0; p < config.epoch_presentations; ++p, t += period)
    schedule.present_synchronized(group, t);
  const double t_end = t;

  NeuronState state;
  state.w = w0;
  state.theta = config.theta;
  state.alpha_rate = config.alpha_rate;

  IntegrateOptions options;
  options.dt = config.dt;
  options.record_weights = true;
  options.tracked.resize(static_cast<std::size_t>(config.relevant));
  for (Eigen::Index i = 0; i < config.relevant; ++i)
    options.tracked[static_cast<std::size_t>(i)] = i;

  AssociationOutcome outcome;
  outcome.relevant_contents = relevant.points;
  outcome.epoch_begin = epoch_begin;
  outcome.trace = integrate(state, schedule, t_end, options);
  const Vector w_end = outcome.trace.final_w;

  outcome.test_relevant = relevant.points * w_end;
  outcome.test_background = background.points * w_end;

  outcome.known_retained = outcome.test_relevant(0) > config.theta;
  outcome.all_new_detected = true;
  outcome.min_new_margin = std::numeric_limits<double>::infinity();
  outcome.mean_new_margin = 0.0;
  for (Eigen::Index i = 1; i < config.relevant; ++i) {
    double margin = outcome.test_relevant(i) - config.theta;
    outcome.all_new_detected = outcome.all_new_detected && margin > 0.0;
    outcome.min_new_margin = std::min(outcome.min_new_margin, margin);
    outcome.mean_new_margin += margin;
  }
  if (config.relevant > 1)
    outcome.mean_new_margin /= static_cast<double>(config.relevant - 1);
  else
    outcome.min_new_margin = outcome.test_relevant(0) - config.theta;

  outcome.background_false_positive = (outcome.test_background.array() > config.theta).any();

  // Crossing detection on the recorded trace: each new stimulus must start at
  // or below threshold and cross it within the learning epoch.
  const auto steps = outcome.trace.t.size();
  outcome.crossed_during_epoch = true;  // vacuous for a single relevant stimulus
  for (Eigen::Index k = 1; k < config.relevant; ++k) {
    bool started_low = outcome.trace.tracked_responses(0, k) <= config.theta;
    bool crossed = false;
    for (std::size_t s = 0; s < steps; ++s) {
      if (outcome.trace.t[s] < epoch_begin) continue;
      if (outcome.trace.tracked_responses(static_cast<Eigen::Index>(s), k) > config.theta) {
        crossed = true;
        break;
      }
    }
    outcome.crossed_during_epoch = outcome.crossed_during_epoch && started_low && crossed;
  }

  // Transient background false positives, sampled on the recorded grid.
  outcome.transient_false_positive = false;
  for (std::size_t s = 0; s < steps && !outcome.transient_false_positive; s += 5) {
    if (outcome.trace.t[s] < epoch_begin) continue;
    if (outcome.trace.weights.empty()) break;
    outcome.transient_false_positive =
        ((background.points * outcome.trace.weights[s]).array() > config.theta).any();
  }
  return outcome;
}

}  // namespace sepkit::neurosim
