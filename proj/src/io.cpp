#include "sepkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepkit/errors.hpp"

namespace sepkit::io {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  if (begin < end && *begin == '+') ++begin;  // from_chars rejects a leading plus
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw DataError("non-numeric cell at row " + std::to_string(row) + ", column " +
                    std::to_string(column) + ": '" + cell + "'");
  if (!std::isfinite(value))
    throw DataError("non-finite value at row " + std::to_string(row) + ", column " +
                    std::to_string(column));
  return value;
}

}  // namespace

std::string format_full(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

PointCloud read_csv(const std::string& path, bool has_header,
                    std::optional<Eigen::Index> label_column) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t row_number = 0;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (row_number == 1 && has_header) continue;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    std::vector<std::string> cells = split_line(line);
    if (width == 0) {
      width = cells.size();
      if (label_column && (*label_column < 0 || *label_column >= static_cast<Eigen::Index>(width)))
        throw DataError("label column " + std::to_string(*label_column) +
                        " out of range for " + std::to_string(width) + " columns");
    } else if (cells.size() != width) {
      throw DataError("ragged row at line " + std::to_string(row_number) + ": expected " +
                      std::to_string(width) + " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> values;
    values.reserve(width);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && static_cast<Eigen::Index>(c) == *label_column) {
        std::string label = cells[c];
        while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) label.pop_back();
        labels.push_back(label);
        continue;
      }
      values.push_back(parse_cell(cells[c], row_number, c + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError("'" + path + "' contains no data rows");
  PointCloud cloud;
  cloud.points.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      cloud.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  cloud.labels = std::move(labels);
  return cloud;
}

std::vector<std::string> read_labels(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  if (labels.empty()) throw DataError("'" + path + "' contains no labels");
  return labels;
}

void write_csv(const Matrix& points, const std::string& path, bool header,
               bool full_precision) {
  std::ofstream out = open_output(path);
  if (header) {
    for (Eigen::Index j = 0; j < points.cols(); ++j)
      out << (j ? "," : "") << "c" << j;
    out << "\n";
  }
  char buffer[32];
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), full_precision ? "%.17g" : "%.6g", points(i, j));
      out << (j ? "," : "") << buffer;
    }
    out << "\n";
  }
}

Json whitening_to_json(const preprocess::WhiteningModel& model) {
  Json json;
  json["type"] = "whitening";
  json["input_dim"] = model.input_dim();
  json["retained"] = model.retained();
  json["kappa"] = model.condition_number();
  json["mean"] = std::vector<double>(model.mean.data(), model.mean.data() + model.mean.size());
  json["eigenvalues"] = std::vector<double>(model.eigenvalues.data(),
                                            model.eigenvalues.data() + model.eigenvalues.size());
  Json components = Json::array();
  for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < model.components.cols(); ++j) row.push_back(model.components(i, j));
    components.push_back(std::move(row));
  }
  json["components"] = std::move(components);  // row-major, one row per component
  return json;
}

preprocess::WhiteningModel whitening_from_json(const Json& json) {
  if (!json.contains("type") || json["type"] != "whitening")
    throw DataError("JSON does not describe a whitening model");
  preprocess::WhiteningModel model;
  const auto mean = json.at("mean").get<std::vector<double>>();
  const auto eigenvalues = json.at("eigenvalues").get<std::vector<double>>();
  model.mean = Eigen::Map<const Vector>(mean.data(), static_cast<Eigen::Index>(mean.size()));
  model.eigenvalues = Eigen::Map<const Vector>(eigenvalues.data(),
                                               static_cast<Eigen::Index>(eigenvalues.size()));
  const auto& components = json.at("components");
  model.components.resize(static_cast<Eigen::Index>(components.size()), model.mean.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto row = components[i].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != model.mean.size())
      throw DataError("whitening component " + std::to_string(i) + " has wrong dimension");
    for (std::size_t j = 0; j < row.size(); ++j)
      model.components(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  if (model.eigenvalues.size() != model.components.rows())
    throw DataError("whitening model eigenvalue/component count mismatch");
  return model;
}

void save_whitening(const preprocess::WhiteningModel& model, const std::string& path) {
  std::ofstream out = open_output(path);
  out << whitening_to_json(model).dump(2) << "\n";
}

preprocess::WhiteningModel load_whitening(const std::string& path) {
  std::ifstream in = open_input(path);
  Json json = Json::parse(in, nullptr, true);
  return whitening_from_json(json);
}

Json corrector_to_json(const corrector::Corrector& model) {
  Json json;
  json["type"] = "corrector";
  json["preprocessing"] = whitening_to_json(model.preprocessing);
  json["w"] = std::vector<double>(model.w.data(), model.w.data() + model.w.size());
  json["threshold"] = model.threshold;
  json["trained_on"] = model.trained_on;
  return json;
}

corrector::Corrector corrector_from_json(const Json& json) {
  if (!json.contains("type") || json["type"] != "corrector")
    throw DataError("JSON does not describe a corrector");
  corrector::Corrector model;
  model.preprocessing = whitening_from_json(json.at("preprocessing"));
  const auto w = json.at("w").get<std::vector<double>>();
  model.w = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
  if (model.w.size() != model.preprocessing.retained())
    throw DataError("corrector weight dimension does not match its preprocessing");
  model.threshold = json.at("threshold").get<double>();
  if (json.contains("trained_on"))
    model.trained_on = json.at("trained_on").get<std::vector<Eigen::Index>>();
  return model;
}

void save_corrector(const corrector::Corrector& model, const std::string& path) {
  std::ofstream out = open_output(path);
  out << corrector_to_json(model).dump(2) << "\n";
}

corrector::Corrector load_corrector(const std::string& path) {
  std::ifstream in = open_input(path);
  Json json = Json::parse(in, nullptr, true);
  return corrector_from_json(json);
}

std::vector<corrector::LegacyDecision> read_decisions(const std::string& path, bool has_header) {
  PointCloud raw = read_csv(path, has_header);
  if (raw.dim() < 3)
    throw DataError("decision CSV needs at least one feature column plus score and decided");
  const Eigen::Index n = raw.dim() - 2;
  std::vector<corrector::LegacyDecision> decisions;
  decisions.reserve(static_cast<std::size_t>(raw.size()));
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    corrector::LegacyDecision decision;
    decision.feature = raw.points.row(i).head(n).transpose();
    decision.score = raw.points(i, n);
    decision.decided_positive = raw.points(i, n + 1) != 0.0;
    decisions.push_back(std::move(decision));
  }
  return decisions;
}

void write_decisions(const std::vector<corrector::LegacyDecision>& decisions,
                     const std::string& path) {
  std::ofstream out = open_output(path);
  if (decisions.empty()) throw DataError("no decisions to write");
  const Eigen::Index n = decisions.front().feature.size();
  for (Eigen::Index j = 0; j < n; ++j) out << "c" << j << ",";
  out << "score,decided\n";
  char buffer[32];
  for (const auto& decision : decisions) {
    if (decision.feature.size() != n) throw DataError("inconsistent feature dimensions");
    for (Eigen::Index j = 0; j < n; ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.6g", decision.feature(j));
      out << buffer << ",";
    }
    std::snprintf(buffer, sizeof(buffer), "%.6g", decision.score);
    out << buffer << "," << (decision.decided_positive ? 1 : 0) << "\n";
  }
}

namespace {

Json block_to_json(const ReportBlock& block) {
  Json json;
  json["name"] = block.name;
  json["sphere"] = block.sphere;
  Json n_alpha = Json::array();
  Json nu_alpha = Json::array();
  Json p_bar = Json::array();
  Json n_star = Json::array();
  Json nu_star = Json::array();
  Json p_star = Json::array();
  bool starred = false;
  for (const auto& report : block.stats) {
    n_alpha.push_back(report.N_alpha);
    nu_alpha.push_back(report.nu_alpha);
    p_bar.push_back(report.p_bar);
    if (report.has_starred) {
      starred = true;
      n_star.push_back(report.N_alpha_star);
      nu_star.push_back(report.nu_alpha_star);
      p_star.push_back(report.p_bar_star);
    }
  }
  json["N_alpha"] = std::move(n_alpha);
  json["nu_alpha"] = std::move(nu_alpha);
  json["p_bar_y"] = std::move(p_bar);
  if (starred) {
    json["N_alpha_star"] = std::move(n_star);
    json["nu_alpha_star"] = std::move(nu_star);
    json["p_bar_y_star"] = std::move(p_star);
  }
  if (!block.effective_dimension.empty()) {
    Json dims = Json::array();
    for (double dim : block.effective_dimension) {
      if (std::isnan(dim))
        dims.push_back(nullptr);
      else
        dims.push_back(dim);
    }
    json["effective_dimension"] = std::move(dims);
  }
  bool any_pairs = false;
  for (const auto& report : block.stats) any_pairs |= !report.violating_pairs.empty();
  if (any_pairs) {
    Json pairs_by_alpha = Json::array();
    for (const auto& report : block.stats) {
      Json pairs = Json::array();
      for (const auto& [x, y] : report.violating_pairs) pairs.push_back(Json::array({x, y}));
      pairs_by_alpha.push_back(std::move(pairs));
    }
    json["violating_pairs"] = std::move(pairs_by_alpha);
  }
  return json;
}

}  // namespace

Json report_to_json(const std::vector<ReportBlock>& blocks, const Json& metadata) {
  Json json;
  Json alphas = Json::array();
  if (!blocks.empty())
    for (const auto& report : blocks.front().stats) alphas.push_back(report.alpha);
  json["alphas"] = std::move(alphas);
  Json block_array = Json::array();
  for (const auto& block : blocks) block_array.push_back(block_to_json(block));
  json["blocks"] = std::move(block_array);
  if (!metadata.is_null()) json["metadata"] = metadata;
  return json;
}

std::string report_to_csv(const std::vector<ReportBlock>& blocks) {
  std::ostringstream out;
  out << "block,statistic";
  if (!blocks.empty())
    for (const auto& report : blocks.front().stats) out << "," << format_full(report.alpha);
  out << "\n";
  for (const auto& block : blocks) {
    auto row = [&](const std::string& statistic, auto getter) {
      out << block.name << "," << statistic;
      for (const auto& report : block.stats) out << "," << getter(report);
      out << "\n";
    };
    using Report = separability::SeparabilityReport;
    row("N_alpha", [](const Report& r) { return std::to_string(r.N_alpha); });
    row("nu_alpha", [](const Report& r) { return format_full(r.nu_alpha); });
    row("p_bar_y", [](const Report& r) { return format_full(r.p_bar); });
    if (!block.stats.empty() && block.stats.front().has_starred) {
      row("N_alpha_star", [](const Report& r) { return std::to_string(r.N_alpha_star); });
      row("nu_alpha_star", [](const Report& r) { return format_full(r.nu_alpha_star); });
      row("p_bar_y_star", [](const Report& r) { return format_full(r.p_bar_star); });
    }
  }
  return out.str();
}

}  // namespace sepkit::io
