#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/corrector.hpp"
#include "sepkit/point_cloud.hpp"
#include "sepkit/preprocess.hpp"
#include "sepkit/separability.hpp"

namespace sepkit::io {

using Json = nlohmann::ordered_json;

// Reads a rectangular numeric CSV. When label_column is set, that column is
// extracted verbatim into the cloud labels. Parse errors name the offending
// row and column (1-based).
PointCloud read_csv(const std::string& path, bool has_header = false,
                    std::optional<Eigen::Index> label_column = {});

// Reads a single-column label file (one label per line).
std::vector<std::string> read_labels(const std::string& path);

// Data matrices are written with 6 significant digits (the documented CSV
// convention); pass full_precision for lossless round trips.
void write_csv(const Matrix& points, const std::string& path, bool header = false,
               bool full_precision = false);

Json whitening_to_json(const preprocess::WhiteningModel& model);
preprocess::WhiteningModel whitening_from_json(const Json& json);
void save_whitening(const preprocess::WhiteningModel& model, const std::string& path);
preprocess::WhiteningModel load_whitening(const std::string& path);

Json corrector_to_json(const corrector::Corrector& model);
corrector::Corrector corrector_from_json(const Json& json);
void save_corrector(const corrector::Corrector& model, const std::string& path);
corrector::Corrector load_corrector(const std::string& path);

// Legacy decisions as CSV: n feature columns, then `score`, then `decided`
// (0/1). The header is optional on read and always written on write.
std::vector<corrector::LegacyDecision> read_decisions(const std::string& path, bool has_header);
void write_decisions(const std::vector<corrector::LegacyDecision>& decisions,
                     const std::string& path);

// A named group of per-threshold reports, one block per Table-style section.
struct ReportBlock {
  std::string name;  // e.g. "all data" / "unit sphere"; no commas (CSV rows)
  bool sphere = false;
  std::vector<separability::SeparabilityReport> stats;
  std::vector<double> effective_dimension;  // per alpha; NaN when undefined
};

// Canonical JSON layout: alphas array plus per-block rows keyed by statistic,
// mirroring the threshold-column table structure.
Json report_to_json(const std::vector<ReportBlock>& blocks, const Json& metadata);

// CSV layout: block,statistic,<alpha...> rows. Report values keep full
// precision so the JSON and CSV forms carry identical numbers.
std::string report_to_csv(const std::vector<ReportBlock>& blocks);

std::string format_full(double value);

}  // namespace sepkit::io
