#pragma once

#include <vector>

#include "sepkit/point_cloud.hpp"
#include "sepkit/rng.hpp"

namespace sepkit::neurosim {

// Timed presentations of stimulus content vectors. Each presentation opens a
// rectangular window of length `window`; frames of the same stimulus must not
// overlap (onset_{j+1} > onset_j + window).
struct StimulusSchedule {
  Matrix contents;                          // M x n stimulus content vectors
  std::vector<std::vector<double>> onsets;  // per-stimulus presentation times
  double window = 1.0;

  Eigen::Index stimulus_count() const { return contents.rows(); }
  Eigen::Index dim() const { return contents.cols(); }
  void validate() const;

  // Adds one presentation of every stimulus in `group` at the same onset,
  // realising a fully synchronized learning epoch.
  void present_synchronized(const std::vector<Eigen::Index>& group, double onset);
};

// Threshold neuron with response-gated Oja plasticity and an optional
// adaptive centre: w' = alpha v y (E - w y), c' = a (S - c), E = S - c,
// y = (w, E), v = max(0, y - theta).
struct NeuronState {
  Vector w;
  double theta = 0.0;
  double alpha_rate = 1.0;
  Vector c;          // adaptive centre; empty means fixed at zero
  double a_rate = 0.0;
};

struct Response {
  double y = 0.0;
  double v = 0.0;
};

// Overall input S(t): sum of content vectors whose window covers t.
Vector input_signal(const StimulusSchedule& schedule, double t);

// Membrane potential and ramp response for an instantaneous input.
Response response(const NeuronState& state, const Vector& signal);

struct IntegrateOptions {
  double dt = 0.0;               // 0 means window / 50
  int record_stride = 1;         // record every k-th step
  std::vector<Eigen::Index> tracked;  // stimuli whose solo response is recorded
  bool record_weights = false;   // keep w(t) snapshots at recorded steps
};

// Trace of one integration run, recorded every `record_stride` steps.
struct SimTrace {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> v;
  std::vector<double> w_norm;
  std::vector<double> nr_time;           // integral of v y^2 up to t
  Matrix tracked_responses;              // recorded steps x tracked stimuli
  std::vector<Eigen::Index> tracked;
  std::vector<Vector> weights;           // optional w snapshots
  Vector final_w;
  Vector final_c;
  double final_nr_time = 0.0;
};

// Fixed-step 4th-order integration of the plasticity dynamics. Presentation
// onsets are snapped to the time grid so every window edge coincides with a
// step boundary and each step integrates a smooth piece.
SimTrace integrate(const NeuronState& state, const StimulusSchedule& schedule, double t_end,
                   const IntegrateOptions& options = {});

// The five associative-learning conditions; in strict mode conditions 4-5
// use the gap factor gamma = sqrt((1 + (w0, w_bar)) / 2).
struct AssociationConditions {
  bool known_detected = false;        // (w0, x0) > theta0
  bool group_response = false;        // (w0, x) > -(theta0-theta)/(|Y|-1) for x in Y\{x0}
  bool relevant_detected = false;     // (w_bar, x) > theta for all x in Y
  bool background_silent_w0 = false;  // (w0, x) < theta (or gamma theta) on M
  bool background_silent_wbar = false;
  double gamma = 1.0;
  bool strict = false;

  bool all() const {
    return known_detected && group_response && relevant_detected && background_silent_w0 &&
           background_silent_wbar;
  }
};

AssociationConditions check_association(const Vector& w0, double theta0, double theta,
                                        const PointCloud& relevant,
                                        const PointCloud& background, bool strict);

struct AssociationConfig {
  Eigen::Index n = 400;
  Eigen::Index background = 500;
  Eigen::Index relevant = 2;
  double theta = 0.21;
  double theta0 = 0.5;
  double alpha_rate = 1.0;
  double window = 1.0;
  double dt = 0.02;
  int pre_presentations = 2;    // known stimulus alone before the epoch
  int epoch_presentations = 10; // synchronized group presentations
  double gap = 0.5;             // idle time between windows
  Seed seed;
};

struct AssociationOutcome {
  bool all_new_detected = false;       // every new relevant response > theta at test
  bool known_retained = false;         // x0 still detected at test
  bool background_false_positive = false;  // any background response > theta at test
  bool transient_false_positive = false;   // any background crossing during learning
  bool crossed_during_epoch = false;   // every new stimulus crossed theta in the epoch
  double min_new_margin = 0.0;         // min over new stimuli of test response - theta
  double mean_new_margin = 0.0;
  Vector test_relevant;                // test responses, relevant stimuli
  Vector test_background;              // test responses, background stimuli
  Matrix relevant_contents;            // the sampled relevant stimuli, row 0 = known
  double epoch_begin = 0.0;            // learning epoch start on the trace clock
  SimTrace trace;
};

// Samples relevant and background content from the unit ball, initialises a
// neuron selective to the first relevant stimulus, runs a synchronized
// learning epoch, then tests every stimulus individually.
AssociationOutcome run_association_experiment(const AssociationConfig& config);

}  // namespace sepkit::neurosim
