#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "sepkit/corrector.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/io.hpp"
#include "sepkit/preprocess.hpp"
#include "sepkit/sampling.hpp"
#include "sepkit/separability.hpp"

using namespace sepkit;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("io-cli");

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sepkit-test-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  RunResult result;
  std::string command = std::string(SEPKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buffer;
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) result.output += buffer.data();
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("read_csv: docs example, labels, and parse errors") {
  TempDir dir;
  write_file(dir.file("docs.csv"), "1,0\n0.9,0.3\n0,1\n");
  PointCloud cloud = io::read_csv(dir.file("docs.csv"));
  REQUIRE(cloud.size() == 3);
  REQUIRE(cloud.dim() == 2);
  CHECK(cloud.points(1, 1) == 0.3);

  write_file(dir.file("labelled.csv"), "1,0,alice\n0.5,0.5,bob\n0,1,alice\n");
  PointCloud labelled = io::read_csv(dir.file("labelled.csv"), false, 2);
  REQUIRE(labelled.has_labels());
  CHECK(labelled.labels == std::vector<std::string>{"alice", "bob", "alice"});
  CHECK(labelled.dim() == 2);

  write_file(dir.file("ragged.csv"), "1,2\n3\n");
  try {
    io::read_csv(dir.file("ragged.csv"));
    FAIL("expected DataError");
  } catch (const DataError& error) {
    CHECK(std::string(error.what()).find("line 2") != std::string::npos);
  }

  write_file(dir.file("alpha.csv"), "1,2\n3,x\n");
  try {
    io::read_csv(dir.file("alpha.csv"));
    FAIL("expected DataError");
  } catch (const DataError& error) {
    std::string what = error.what();
    CHECK(what.find("row 2") != std::string::npos);
    CHECK(what.find("column 2") != std::string::npos);
  }

  write_file(dir.file("signs.csv"), "+1.5,-2e-3\n 0.25 ,3\n");
  PointCloud signs = io::read_csv(dir.file("signs.csv"));
  CHECK(signs.points(0, 0) == 1.5);
  CHECK(signs.points(0, 1) == -2e-3);
  CHECK(signs.points(1, 0) == 0.25);

  write_file(dir.file("inf.csv"), "1,inf\n");
  CHECK_THROWS_AS(io::read_csv(dir.file("inf.csv")), DataError);
}

TEST_CASE("write_csv: six significant digits by default, full precision on demand") {
  TempDir dir;
  Matrix points(1, 2);
  points << 1.0 / 3.0, 2.0 / 3.0;
  io::write_csv(points, dir.file("short.csv"));
  CHECK(read_file(dir.file("short.csv")) == "0.333333,0.666667\n");
  io::write_csv(points, dir.file("full.csv"), false, true);
  PointCloud again = io::read_csv(dir.file("full.csv"));
  CHECK(again.points(0, 0) == points(0, 0));
  CHECK(again.points(0, 1) == points(0, 1));
}

TEST_CASE("whitening model: JSON round trip preserves the transform") {
  TempDir dir;
  PointCloud data = sampling::sample_gaussian(5, 300, Seed{201});
  data.points.col(1) *= 4.0;
  preprocess::WhiteningModel model = preprocess::fit_whitening(data, 100.0);
  io::save_whitening(model, dir.file("model.json"));
  preprocess::WhiteningModel loaded = io::load_whitening(dir.file("model.json"));
  CHECK(loaded.mean == model.mean);
  CHECK(loaded.eigenvalues == model.eigenvalues);
  CHECK(loaded.components == model.components);
  Vector probe = data.points.row(7).transpose();
  CHECK(preprocess::apply_whitening(loaded, probe) == preprocess::apply_whitening(model, probe));
}

TEST_CASE("corrector: JSON round trip preserves firing decisions") {
  TempDir dir;
  PointCloud correct = sampling::sample_gaussian(4, 200, Seed{203});
  PointCloud errors = sampling::sample_gaussian(4, 3, Seed{205});
  errors.points.col(0).array() += 5.0;
  corrector::Corrector model = corrector::fit_corrector(correct, errors, 4);
  io::save_corrector(model, dir.file("corrector.json"));
  corrector::Corrector loaded = io::load_corrector(dir.file("corrector.json"));
  CHECK(loaded.threshold == model.threshold);
  CHECK(loaded.trained_on == model.trained_on);
  PointCloud probes = sampling::sample_gaussian(4, 200, Seed{207});
  for (Eigen::Index i = 0; i < probes.size(); ++i) {
    Vector feature = probes.points.row(i).transpose();
    CHECK(loaded.fires(feature) == model.fires(feature));
  }
  for (Eigen::Index i = 0; i < errors.size(); ++i)
    CHECK(loaded.fires(errors.points.row(i).transpose()));
}

TEST_CASE("decisions CSV round trip") {
  TempDir dir;
  std::vector<corrector::LegacyDecision> decisions(3);
  for (int i = 0; i < 3; ++i) {
    decisions[static_cast<std::size_t>(i)].feature = Vector::Constant(2, i + 0.5);
    decisions[static_cast<std::size_t>(i)].score = i - 1.0;
    decisions[static_cast<std::size_t>(i)].decided_positive = i != 1;
  }
  io::write_decisions(decisions, dir.file("decisions.csv"));
  auto loaded = io::read_decisions(dir.file("decisions.csv"), true);
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[0].decided_positive);
  CHECK_FALSE(loaded[1].decided_positive);
  CHECK(loaded[2].feature(0) == doctest::Approx(2.5));
}

TEST_CASE("report: JSON and CSV carry identical values") {
  Matrix points(3, 2);
  points << 1, 0, 0.9, 0.3, 0, 1;
  PointCloud cloud{points};
  cloud.labels = {"a", "b", "a"};

  io::ReportBlock block;
  block.name = "all data";
  block.stats = separability::analyze(cloud, {0.8, 0.9}, {.class_aware = true});
  std::vector<io::ReportBlock> blocks = {block};

  io::Json json = io::report_to_json(blocks, {});
  std::string csv = io::report_to_csv(blocks);

  CHECK(json["alphas"].size() == 2);
  CHECK(json["blocks"][0]["N_alpha"][0].get<Eigen::Index>() == block.stats[0].N_alpha);
  CHECK(json["blocks"][0].contains("p_bar_y_star"));

  // The CSV row for p_bar_y must parse back to the exact JSON double.
  std::istringstream lines(csv);
  std::string line;
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.find(",p_bar_y,") != std::string::npos) {
      auto first_comma = line.find(",p_bar_y,") + 9;
      auto second = line.find(',', first_comma);
      double value = std::stod(line.substr(first_comma, second - first_comma));
      CHECK(value == json["blocks"][0]["p_bar_y"][0].get<double>());
      found = true;
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("report: empty alphas produce an empty table with header") {
  Matrix points(3, 2);
  points << 1, 0, 0.9, 0.3, 0, 1;
  io::ReportBlock block;
  block.name = "all data";
  block.stats = separability::analyze(PointCloud{points}, {});
  std::string csv = io::report_to_csv({block});
  CHECK(csv.substr(0, 15) == "block,statistic");
}

TEST_CASE("cli: analyze reproduces the worked example through the pipe") {
  TempDir dir;
  write_file(dir.file("docs.csv"), "1,0\n0.9,0.3\n0,1\n");
  RunResult result =
      run_cli("analyze --in " + dir.file("docs.csv") + " --alphas 0.8 --format csv");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("all data,N_alpha,2") != std::string::npos);
}

TEST_CASE("cli: bound prop1 prints the worked value") {
  RunResult result = run_cli("bound --formula prop1 --cardY 100 --alpha 0.9 --n 10");
  CHECK(result.exit_code == 0);
  auto colon = result.output.find(": ");
  REQUIRE(colon != std::string::npos);
  CHECK(std::stod(result.output.substr(colon + 2)) == doctest::Approx(0.2801).epsilon(5e-4));
}

TEST_CASE("cli: sample is reproducible and whiten/analyze round trips") {
  TempDir dir;
  std::string a = dir.file("a.csv");
  std::string b = dir.file("b.csv");
  CHECK(run_cli("sample --dist gaussian --n 4 --count 50 --seed 9 --out " + a).exit_code == 0);
  CHECK(run_cli("sample --dist gaussian --n 4 --count 50 --seed 9 --out " + b).exit_code == 0);
  CHECK(read_file(a) == read_file(b));

  std::string white = dir.file("white.csv");
  std::string model = dir.file("model.json");
  RunResult whiten =
      run_cli("whiten --in " + a + " --kappa 10 --out " + white + " --model " + model);
  CHECK(whiten.exit_code == 0);
  CHECK(fs::exists(white));
  CHECK(fs::exists(model));

  RunResult threaded = run_cli("--threads 1 analyze --in " + white + " --alphas 0.8,0.9");
  RunResult parallel = run_cli("--threads 2 analyze --in " + white + " --alphas 0.8,0.9");
  CHECK(threaded.exit_code == 0);
  CHECK(threaded.output == parallel.output);
}

TEST_CASE("cli: labelled sphere analysis emits the four table blocks") {
  TempDir dir;
  write_file(dir.file("data.csv"), "1,0\n0.9,0.3\n0,1\n0.1,0.95\n");
  write_file(dir.file("labels.csv"), "a\nb\na\nb\n");
  RunResult result = run_cli("analyze --in " + dir.file("data.csv") + " --labels " +
                             dir.file("labels.csv") + " --alphas 0.8,0.9 --sphere --format csv");
  CHECK(result.exit_code == 0);
  // four row-groups: plain and sphere-projected, each with starred rows
  CHECK(result.output.find("all data,N_alpha,") != std::string::npos);
  CHECK(result.output.find("all data,N_alpha_star,") != std::string::npos);
  CHECK(result.output.find("unit sphere,N_alpha,") != std::string::npos);
  CHECK(result.output.find("unit sphere,N_alpha_star,") != std::string::npos);
}

TEST_CASE("cli: missing seed is generated and echoed") {
  TempDir dir;
  RunResult result = run_cli("sample --dist ball --n 2 --count 3 --out " + dir.file("p.csv"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("seed:") != std::string::npos);
}

TEST_CASE("cli: corrector fit and apply over files") {
  TempDir dir;
  PointCloud correct = sampling::sample_gaussian(3, 300, Seed{209});
  PointCloud errors = sampling::sample_gaussian(3, 4, Seed{211});
  errors.points.col(0).array() += 6.0;
  io::write_csv(correct.points, dir.file("correct.csv"), false, true);
  io::write_csv(errors.points, dir.file("errors.csv"), false, true);

  RunResult fit = run_cli("corrector fit --correct " + dir.file("correct.csv") + " --errors " +
                          dir.file("errors.csv") + " --pca 3 --out " + dir.file("model.json"));
  CHECK(fit.exit_code == 0);

  std::vector<corrector::LegacyDecision> decisions;
  for (Eigen::Index i = 0; i < errors.size(); ++i) {
    corrector::LegacyDecision decision;
    decision.feature = errors.points.row(i).transpose();
    decision.score = 1.0;
    decision.decided_positive = true;
    decisions.push_back(decision);
  }
  io::write_decisions(decisions, dir.file("decisions.csv"));
  RunResult applied = run_cli("corrector apply --model " + dir.file("model.json") + " --in " +
                              dir.file("decisions.csv") + " --out " + dir.file("out.csv"));
  CHECK(applied.exit_code == 0);
  CHECK(applied.output.find("suppressed 4 of 4") != std::string::npos);
  auto corrected = io::read_decisions(dir.file("out.csv"), true);
  for (const auto& decision : corrected) {
    CHECK_FALSE(decision.decided_positive);
    CHECK(decision.score < 0.0);
  }
}

TEST_CASE("cli: exit codes follow the usage/data/domain contract") {
  TempDir dir;
  CHECK(run_cli("analyze --no-such-flag").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);

  write_file(dir.file("ragged.csv"), "1,2\n3\n");
  CHECK(run_cli("analyze --in " + dir.file("ragged.csv")).exit_code == 3);

  CHECK(run_cli("bound --formula prop1 --cardY 10 --alpha 0.4 --n 5").exit_code == 4);

  write_file(dir.file("ok.csv"), "1,0\n0,1\n");
  CHECK(run_cli("analyze --in " + dir.file("ok.csv") + " --alphas 1.5").exit_code == 4);
}

TEST_CASE("cli: version flag") {
  RunResult result = run_cli("--version");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("sepkit") != std::string::npos);
}

TEST_SUITE_END();
