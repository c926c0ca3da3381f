// sepkit: sampling, whitening, Fisher-separability analysis, separation
// bounds with Monte Carlo verification, legacy-classifier correctors, and a
// single-neuron plasticity simulator behind one reproducible command line.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sepkit/bounds.hpp"
#include "sepkit/corrector.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/io.hpp"
#include "sepkit/montecarlo.hpp"
#include "sepkit/neurosim.hpp"
#include "sepkit/parallel.hpp"
#include "sepkit/preprocess.hpp"
#include "sepkit/sampling.hpp"
#include "sepkit/separability.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using sepkit::io::Json;

struct SeedFlag {
  std::optional<std::uint64_t> value;

  // A missing seed is generated once, echoed on stderr, and embedded in the
  // output metadata so the run can be replayed.
  sepkit::Seed resolve() {
    if (!value) {
      std::random_device device;
      value = (static_cast<std::uint64_t>(device()) << 32) ^ device();
      std::cerr << "seed: " << *value << "\n";
    }
    return sepkit::Seed{*value};
  }
};

void add_seed_option(CLI::App* cmd, SeedFlag& seed) {
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&seed](std::uint64_t v) { seed.value = v; }, "RNG seed (generated if omitted)");
}

void emit_error(const std::string& code, const std::string& message) {
  Json error;
  error["error"] = code;
  error["message"] = message;
  std::cerr << error.dump() << "\n";
}

Json bound_json(const sepkit::bounds::BoundResult& result) {
  Json json;
  json["formula"] = result.formula_id;
  json["value"] = result.value;
  json["raw"] = result.raw;
  json["vacuous"] = result.vacuous;
  if (!result.note.empty()) json["note"] = result.note;
  return json;
}

Json verify_json(const sepkit::montecarlo::VerifyResult& result) {
  Json json;
  json["formula"] = result.formula_id;
  json["bound"] = result.bound;
  json["trials"] = result.trials;
  json["successes"] = result.successes;
  json["empirical"] = result.empirical;
  json["std_error"] = result.std_error;
  json["dominated"] = result.dominated;
  return json;
}

void print_bound(const sepkit::bounds::BoundResult& result, bool as_json) {
  if (as_json) {
    std::cout << bound_json(result).dump() << "\n";
  } else {
    std::printf("%s: %.10g%s\n", result.formula_id.c_str(), result.value,
                result.vacuous ? " (vacuous)" : "");
    if (result.vacuous) std::printf("raw: %.10g\n", result.raw);
    if (!result.note.empty()) std::printf("note: %s\n", result.note.c_str());
  }
}

void print_verify(const sepkit::montecarlo::VerifyResult& result, bool as_json) {
  if (as_json) {
    std::cout << verify_json(result).dump() << "\n";
  } else {
    std::printf("%s: bound %.10g, empirical %.10g (%lld/%lld), dominated: %s\n",
                result.formula_id.c_str(), result.bound, result.empirical, result.successes,
                result.trials, result.dominated ? "yes" : "no");
  }
}

// ---------------------------------------------------------------- sample --

struct SampleArgs {
  std::string dist = "ball";
  Eigen::Index n = 2;
  Eigen::Index count = 100;
  double side = 1.0;
  double epsilon = 0.1;
  std::string base_path;
  std::string out;
  bool header = false;
  SeedFlag seed;
};

void run_sample(SampleArgs& args) {
  sepkit::Seed seed = args.seed.resolve();
  sepkit::sampling::DistributionSpec spec;
  spec.kind = sepkit::sampling::family_from_name(args.dist);
  spec.dimension = args.n;
  spec.cube_side = args.side;
  spec.epsilon = args.epsilon;
  sepkit::PointCloud base;
  if (spec.kind == sepkit::sampling::Family::perturbed_set) {
    if (args.base_path.empty())
      throw sepkit::UsageError("--base is required for the perturbed distribution");
    base = sepkit::io::read_csv(args.base_path);
    spec.base = &base;
    args.count = base.size();
  }
  sepkit::PointCloud cloud = sepkit::sampling::sample(spec, args.count, seed);
  sepkit::io::write_csv(cloud.points, args.out, args.header);
}

// ---------------------------------------------------------------- whiten --

struct WhitenArgs {
  std::string in;
  bool in_header = false;
  double kappa = 10.0;
  std::string out;
  std::string model_path;
};

void run_whiten(const WhitenArgs& args) {
  sepkit::PointCloud data = sepkit::io::read_csv(args.in, args.in_header);
  sepkit::preprocess::WhiteningModel model = sepkit::preprocess::fit_whitening(data, args.kappa);
  if (!args.model_path.empty()) sepkit::io::save_whitening(model, args.model_path);
  if (!args.out.empty()) {
    sepkit::PointCloud white = sepkit::preprocess::apply_whitening(model, data);
    sepkit::io::write_csv(white.points, args.out);
  }
  std::printf("retained %ld of %ld components, kappa %.6g\n",
              static_cast<long>(model.retained()), static_cast<long>(model.input_dim()),
              model.condition_number());
}

// --------------------------------------------------------------- analyze --

struct AnalyzeArgs {
  std::string in;
  bool in_header = false;
  std::vector<double> alphas = {0.8, 0.9, 0.95, 0.98, 0.99};
  std::string labels_path;
  std::optional<Eigen::Index> label_column;
  bool sphere = false;
  bool pairs = false;
  std::string out;
  std::string format = "json";
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw sepkit::DataError("cannot open '" + path + "' for writing");
  file << text;
}

void run_analyze(const AnalyzeArgs& args) {
  sepkit::PointCloud data = sepkit::io::read_csv(args.in, args.in_header, args.label_column);
  if (!args.labels_path.empty()) data.labels = sepkit::io::read_labels(args.labels_path);
  data.check_labels();

  sepkit::separability::AnalyzeOptions options;
  options.class_aware = data.has_labels();
  options.collect_pairs = args.pairs;

  std::vector<sepkit::io::ReportBlock> blocks;
  auto append_block = [&](const sepkit::PointCloud& cloud, const std::string& name,
                          bool on_sphere) {
    sepkit::io::ReportBlock block;
    block.name = name;
    block.sphere = on_sphere;
    block.stats = sepkit::separability::analyze(cloud, args.alphas, options);
    if (on_sphere) {
      // Effective dimension of each mean inseparability probability, where
      // the sphere formula is invertible.
      for (const auto& report : block.stats) {
        double dim = std::nan("");
        if (report.p_bar > 0.0 && report.p_bar < 1.0) {
          try {
            dim = sepkit::preprocess::effective_dimension(report.p_bar, report.alpha);
          } catch (const sepkit::DomainError&) {
          }
        }
        block.effective_dimension.push_back(dim);
      }
    }
    blocks.push_back(std::move(block));
  };

  append_block(data, "all data", false);
  if (args.sphere) {
    sepkit::PointCloud projected = sepkit::preprocess::project_sphere(data);
    append_block(projected, "unit sphere", true);
  }

  Json metadata;
  metadata["input"] = args.in;
  metadata["class_aware"] = options.class_aware;
  metadata["sphere"] = args.sphere;

  if (args.format == "json") {
    write_text(args.out, sepkit::io::report_to_json(blocks, metadata).dump(2) + "\n");
  } else if (args.format == "csv") {
    write_text(args.out, sepkit::io::report_to_csv(blocks));
  } else {
    throw sepkit::UsageError("unknown report format '" + args.format + "'");
  }
}

// ----------------------------------------------------------------- bound --

struct BoundArgs {
  std::string formula;
  double alpha = 0.9;
  double n = 100;
  double card_Y = 1;
  double C = 1.0;
  double r = 0.5;
  double b = 1.1;
  double M = 1;
  double theta = 0.01;
  double delta = 0.5;
  double sigma = -1.0;
  double a = 1.0;
  double base = 2.0;
  double psi = 0.01;
  bool gaussian = false;
  double epsilon = 0.1;
  double h = 0.0;
  double rho = 1.0;
  double k = 1;
  double xi = 0.0;
  double p_bar = 1e-4;
  bool json = false;
};

void run_bound(const BoundArgs& args) {
  using namespace sepkit::bounds;
  const std::string& f = args.formula;
  if (f == "prop1") {
    print_bound(prop1_failure(args.card_Y, args.alpha, args.n), args.json);
  } else if (f == "thm1") {
    print_bound(theorem1_failure(args.C, args.r, args.b, args.alpha, args.n), args.json);
  } else if (f == "ball" || f == "ball-single" || f == "ball-pairs" || f == "ball-ortho") {
    BallBounds bounds = ball_bounds(args.M, args.n, args.r);
    if (f == "ball" || f == "ball-single") print_bound(bounds.single, args.json);
    if (f == "ball" || f == "ball-pairs") print_bound(bounds.pairs, args.json);
    if (f == "ball" || f == "ball-ortho") print_bound(bounds.orthogonality, args.json);
  } else if (f == "ball-capacity") {
    BallCapacity capacity = ball_capacity(args.r, args.n, args.theta);
    print_bound(capacity.single, args.json);
    print_bound(capacity.pairs, args.json);
  } else if (f == "cube" || f == "cube-single" || f == "cube-pairs") {
    double sigma = args.sigma > 0.0 ? args.sigma : std::sqrt(1.0 / 12.0);
    std::vector<double> sigmas(static_cast<std::size_t>(args.n), sigma);
    CubeBounds bounds = cube_bounds(sigmas, args.delta, args.M);
    if (f == "cube" || f == "cube-single") print_bound(bounds.single, args.json);
    if (f == "cube" || f == "cube-pairs") print_bound(bounds.pairs, args.json);
  } else if (f == "logconcave" || f == "strong-logconcave") {
    print_bound(logconcave_capacity({args.a, args.base, 0.0}, args.n,
                                    f == "strong-logconcave", args.psi, args.gaussian),
                args.json);
  } else if (f == "smac-ball" || f == "smac-perturbed" || f == "smac-cube") {
    SmacParams params = f == "smac-ball"        ? smac_params_ball()
                        : f == "smac-perturbed" ? smac_params_perturbed(args.epsilon)
                                                : smac_params_cube();
    if (args.json) {
      Json out;
      out["formula"] = f;
      out["C"] = params.C;
      out["r"] = params.r;
      std::cout << out.dump() << "\n";
    } else {
      std::printf("%s: C = %.10g, r = %.10g\n", f.c_str(), params.C, params.r);
    }
  } else if (f == "sphere-p" || f == "sphere-p-exact") {
    double value = f == "sphere-p" ? sphere_p(args.alpha, args.n)
                                   : exact_cap_oracle(args.alpha, static_cast<int>(args.n));
    if (args.json) {
      Json out;
      out["formula"] = f;
      out["value"] = value;
      std::cout << out.dump() << "\n";
    } else {
      std::printf("%s: %.10g\n", f.c_str(), value);
    }
  } else if (f == "cluster") {
    print_bound(cluster_rejection(args.h, args.rho, args.n), args.json);
  } else if (f == "quasiortho") {
    print_bound(quasiortho_miss(args.n, args.k), args.json);
  } else if (f == "robust-capacity") {
    print_bound(robust_capacity(args.alpha, args.xi, args.n, args.psi), args.json);
  } else if (f == "effective-dimension") {
    double value = sepkit::preprocess::effective_dimension(args.p_bar, args.alpha);
    if (args.json) {
      Json out;
      out["formula"] = f;
      out["value"] = value;
      std::cout << out.dump() << "\n";
    } else {
      std::printf("%s: %.10g\n", f.c_str(), value);
    }
  } else {
    throw sepkit::UsageError("unknown formula '" + f + "'");
  }
}

// ---------------------------------------------------------------- verify --

struct VerifyArgs {
  std::string formula;
  long long trials = 100;
  Eigen::Index n = 100;
  double alpha = 0.8;
  Eigen::Index M = 1000;
  double r = 0.5;
  double delta = 0.5;
  double h = 0.3;
  double rho = 1.0;
  Eigen::Index k = 100;
  SeedFlag seed;
  bool json = false;
};

void run_verify(VerifyArgs& args) {
  using namespace sepkit::montecarlo;
  sepkit::Seed seed = args.seed.resolve();
  const std::string& f = args.formula;
  if (f == "prop1") {
    print_verify(verify_prop1(args.n, args.alpha, args.M, args.trials, seed), args.json);
  } else if (f == "ball" || f == "ball-single" || f == "ball-pairs" || f == "ball-ortho") {
    BallVerify results = verify_ball(args.n, args.r, args.M, args.trials, seed);
    if (f == "ball" || f == "ball-single") print_verify(results.single, args.json);
    if (f == "ball" || f == "ball-pairs") print_verify(results.pairs, args.json);
    if (f == "ball" || f == "ball-ortho") print_verify(results.orthogonality, args.json);
  } else if (f == "cube" || f == "cube-single" || f == "cube-pairs") {
    CubeVerify results = verify_cube(args.n, args.delta, args.M, args.trials, seed);
    if (f == "cube" || f == "cube-single") print_verify(results.single, args.json);
    if (f == "cube" || f == "cube-pairs") print_verify(results.pairs, args.json);
  } else if (f == "cluster") {
    print_verify(verify_cluster(args.n, args.h, args.rho, args.trials, seed), args.json);
  } else if (f == "quasiortho") {
    print_verify(verify_quasiortho(args.n, args.k, args.trials, seed), args.json);
  } else if (f == "selective") {
    print_verify(verify_selective(args.n, args.alpha, args.M, args.trials, seed), args.json);
  } else {
    throw sepkit::UsageError("unknown verification target '" + f + "'");
  }
}

// ------------------------------------------------------------- corrector --

struct CorrectorFitArgs {
  std::string correct_path;
  std::string errors_path;
  Eigen::Index pca = 200;
  std::string out;
};

void run_corrector_fit(const CorrectorFitArgs& args) {
  sepkit::PointCloud correct = sepkit::io::read_csv(args.correct_path);
  sepkit::PointCloud errors = sepkit::io::read_csv(args.errors_path);
  sepkit::corrector::Corrector model =
      sepkit::corrector::fit_corrector(correct, errors, args.pca);
  sepkit::io::save_corrector(model, args.out);
  std::printf("corrector: %ld components, threshold %.10g\n",
              static_cast<long>(model.preprocessing.retained()), model.threshold);
}

struct CorrectorApplyArgs {
  std::string model_path;
  std::string in;
  std::string out;
};

void run_corrector_apply(const CorrectorApplyArgs& args) {
  sepkit::corrector::Corrector model = sepkit::io::load_corrector(args.model_path);
  auto decisions = sepkit::io::read_decisions(args.in, /*has_header=*/true);
  Eigen::Index suppressed = 0;
  for (auto& decision : decisions) {
    sepkit::corrector::LegacyDecision corrected = sepkit::corrector::apply(model, decision);
    if (decision.decided_positive && !corrected.decided_positive) ++suppressed;
    decision = corrected;
  }
  sepkit::io::write_decisions(decisions, args.out);
  std::printf("suppressed %ld of %zu decisions\n", static_cast<long>(suppressed),
              decisions.size());
}

// -------------------------------------------------------------- neurosim --

struct NeurosimArgs {
  Eigen::Index n = 400;
  Eigen::Index background = 500;
  Eigen::Index relevant = 2;
  double theta = 0.21;
  double theta0 = 0.5;
  double alpha = 1.0;
  double dt = 0.02;
  std::string trace_path;
  SeedFlag seed;
};

void run_neurosim(NeurosimArgs& args) {
  sepkit::neurosim::AssociationConfig config;
  config.n = args.n;
  config.background = args.background;
  config.relevant = args.relevant;
  config.theta = args.theta;
  config.theta0 = args.theta0;
  config.alpha_rate = args.alpha;
  config.dt = args.dt;
  config.seed = args.seed.resolve();
  sepkit::neurosim::AssociationOutcome outcome =
      sepkit::neurosim::run_association_experiment(config);

  if (!args.trace_path.empty()) {
    std::ofstream file(args.trace_path);
    if (!file) throw sepkit::DataError("cannot open '" + args.trace_path + "' for writing");
    file << "t,y,v,w_norm,nr_time";
    for (Eigen::Index i : outcome.trace.tracked) file << ",response_" << i;
    file << "\n";
    char buffer[32];
    auto cell = [&](double value) {
      std::snprintf(buffer, sizeof(buffer), "%.6g", value);
      file << buffer;
    };
    for (std::size_t s = 0; s < outcome.trace.t.size(); ++s) {
      cell(outcome.trace.t[s]);
      file << ",";
      cell(outcome.trace.y[s]);
      file << ",";
      cell(outcome.trace.v[s]);
      file << ",";
      cell(outcome.trace.w_norm[s]);
      file << ",";
      cell(outcome.trace.nr_time[s]);
      for (Eigen::Index k = 0; k < outcome.trace.tracked_responses.cols(); ++k) {
        file << ",";
        cell(outcome.trace.tracked_responses(static_cast<Eigen::Index>(s), k));
      }
      file << "\n";
    }
  }

  Json summary;
  summary["seed"] = *args.seed.value;
  summary["relevant"] = args.relevant;
  summary["background"] = args.background;
  summary["theta"] = args.theta;
  summary["all_new_detected"] = outcome.all_new_detected;
  summary["known_retained"] = outcome.known_retained;
  summary["background_false_positive"] = outcome.background_false_positive;
  summary["transient_false_positive"] = outcome.transient_false_positive;
  summary["crossed_during_epoch"] = outcome.crossed_during_epoch;
  summary["min_new_margin"] = outcome.min_new_margin;
  summary["mean_new_margin"] = outcome.mean_new_margin;
  std::cout << summary.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic separation toolkit"};
  app.set_version_flag("--version", std::string("sepkit ") + kVersion);
  unsigned threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0 = all cores)");

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "draw seeded samples from a named family");
  sample->add_option("--dist", sample_args.dist, "ball|sphere|cube|gaussian|perturbed");
  sample->add_option("--n", sample_args.n, "dimension");
  sample->add_option("--count", sample_args.count, "number of points");
  sample->add_option("--side", sample_args.side, "cube side length");
  sample->add_option("--epsilon", sample_args.epsilon, "perturbation radius");
  sample->add_option("--base", sample_args.base_path, "base cloud CSV for perturbed");
  sample->add_option("--out", sample_args.out, "output CSV")->required();
  sample->add_flag("--header", sample_args.header, "write c0..c{n-1} column names");
  add_seed_option(sample, sample_args.seed);

  WhitenArgs whiten_args;
  CLI::App* whiten = app.add_subcommand("whiten", "fit and apply the whitening pipeline");
  whiten->add_option("--in", whiten_args.in, "input CSV")->required();
  whiten->add_flag("--in-header", whiten_args.in_header, "input has a header row");
  whiten->add_option("--kappa", whiten_args.kappa, "multicollinearity cap (default 10)");
  whiten->add_option("--out", whiten_args.out, "whitened CSV");
  whiten->add_option("--model", whiten_args.model_path, "whitening model JSON");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Fisher-separability statistics");
  analyze->add_option("--in", analyze_args.in, "input CSV")->required();
  analyze->add_flag("--in-header", analyze_args.in_header, "input has a header row");
  analyze->add_option("--alphas", analyze_args.alphas, "thresholds in (0,1)")->delimiter(',');
  analyze->add_option("--labels", analyze_args.labels_path, "per-point labels, one per line");
  analyze->add_option("--label-col", analyze_args.label_column,
                      "column of --in holding class labels");
  analyze->add_flag("--sphere", analyze_args.sphere, "add a unit-sphere projected block");
  analyze->add_flag("--pairs", analyze_args.pairs, "include violating index pairs");
  analyze->add_option("--out", analyze_args.out, "report path (stdout if omitted)");
  analyze->add_option("--format", analyze_args.format, "json|csv");

  BoundArgs bound_args;
  CLI::App* bound = app.add_subcommand("bound", "closed-form separation bounds");
  bound->add_option("--formula", bound_args.formula, "bound identifier")->required();
  bound->add_option("--alpha", bound_args.alpha, "Fisher threshold");
  bound->add_option("--n", bound_args.n, "dimension");
  bound->add_option("--cardY", bound_args.card_Y, "|Y| for prop1");
  bound->add_option("--C", bound_args.C, "density prefactor");
  bound->add_option("--r", bound_args.r, "radius/density parameter");
  bound->add_option("--b", bound_args.b, "growth base");
  bound->add_option("--M", bound_args.M, "number of points");
  bound->add_option("--theta", bound_args.theta, "probability budget");
  bound->add_option("--delta", bound_args.delta, "cube concentration width");
  bound->add_option("--sigma", bound_args.sigma, "per-coordinate std (default uniform cube)");
  bound->add_option("--a", bound_args.a, "log-concave prefactor");
  bound->add_option("--base", bound_args.base, "log-concave growth base");
  bound->add_option("--psi", bound_args.psi, "failure probability");
  bound->add_flag("--gaussian", bound_args.gaussian, "note the Gaussian c = 1/8 case");
  bound->add_option("--epsilon", bound_args.epsilon, "perturbation radius");
  bound->add_option("--margin", bound_args.h, "cluster margin h");
  bound->add_option("--rho", bound_args.rho, "stimulus ball radius");
  bound->add_option("--k", bound_args.k, "cluster size");
  bound->add_option("--xi", bound_args.xi, "relative robustness");
  bound->add_option("--pbar", bound_args.p_bar, "mean inseparability probability");
  bound->add_flag("--json", bound_args.json, "JSON output");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Monte Carlo check of a bound");
  verify
      ->add_option("--formula", verify_args.formula,
                   "prop1|ball|cube|cluster|quasiortho|selective")
      ->required();
  verify->add_option("--trials", verify_args.trials, "number of seeded trials");
  verify->add_option("--n", verify_args.n, "dimension");
  verify->add_option("--alpha", verify_args.alpha, "Fisher threshold");
  verify->add_option("--M", verify_args.M, "number of points");
  verify->add_option("--r", verify_args.r, "ball radius parameter");
  verify->add_option("--delta", verify_args.delta, "cube concentration width");
  verify->add_option("--margin", verify_args.h, "cluster margin h");
  verify->add_option("--rho", verify_args.rho, "stimulus ball radius");
  verify->add_option("--k", verify_args.k, "cluster size");
  verify->add_flag("--json", verify_args.json, "JSON output");
  add_seed_option(verify, verify_args.seed);

  CLI::App* corrector_cmd = app.add_subcommand("corrector", "single-neuron error correctors");
  corrector_cmd->require_subcommand(1);
  CorrectorFitArgs fit_args;
  CLI::App* fit = corrector_cmd->add_subcommand("fit", "fit a corrector");
  fit->add_option("--correct", fit_args.correct_path, "correct-behaviour features CSV")
      ->required();
  fit->add_option("--errors", fit_args.errors_path, "error features CSV")->required();
  fit->add_option("--pca", fit_args.pca, "principal components to keep");
  fit->add_option("--out", fit_args.out, "corrector JSON")->required();

  CorrectorApplyArgs apply_args;
  CLI::App* apply = corrector_cmd->add_subcommand("apply", "apply a corrector to decisions");
  apply->add_option("--model", apply_args.model_path, "corrector JSON")->required();
  apply->add_option("--in", apply_args.in, "decisions CSV (c0..,score,decided)")->required();
  apply->add_option("--out", apply_args.out, "corrected decisions CSV")->required();

  NeurosimArgs neurosim_args;
  CLI::App* neurosim = app.add_subcommand("neurosim", "associative learning experiment");
  neurosim->add_option("--n", neurosim_args.n, "stimulus dimension");
  neurosim->add_option("--background", neurosim_args.background, "background stimulus count");
  neurosim->add_option("--relevant", neurosim_args.relevant, "relevant stimulus count");
  neurosim->add_option("--theta", neurosim_args.theta, "firing threshold");
  neurosim->add_option("--theta0", neurosim_args.theta0, "initial selective threshold");
  neurosim->add_option("--alpha", neurosim_args.alpha, "plasticity rate");
  neurosim->add_option("--dt", neurosim_args.dt, "integration step");
  neurosim->add_option("--trace", neurosim_args.trace_path, "trace CSV output");
  add_seed_option(neurosim, neurosim_args.seed);

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForVersion& version) {
    return app.exit(version);
  } catch (const CLI::ParseError& parse_error) {
    emit_error("usage", parse_error.what());
    return 2;
  }

  sepkit::set_max_threads(threads);

  try {
    if (*sample) run_sample(sample_args);
    if (*whiten) run_whiten(whiten_args);
    if (*analyze) run_analyze(analyze_args);
    if (*bound) run_bound(bound_args);
    if (*verify) run_verify(verify_args);
    if (*corrector_cmd) {
      if (*fit) run_corrector_fit(fit_args);
      if (*apply) run_corrector_apply(apply_args);
    }
    if (*neurosim) run_neurosim(neurosim_args);
  } catch (const sepkit::UsageError& error) {
    emit_error("usage", error.what());
    return error.exit_code();
  } catch (const sepkit::DataError& error) {
    emit_error("data", error.what());
    return error.exit_code();
  } catch (const sepkit::DomainError& error) {
    emit_error("domain", error.what());
    return error.exit_code();
  } catch (const std::exception& error) {
    emit_error("internal", error.what());
    return 1;
  }
  return 0;
}
