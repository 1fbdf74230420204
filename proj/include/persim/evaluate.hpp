#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "persim/config.hpp"
#include "persim/fusion.hpp"
#include "persim/manifest.hpp"
#include "persim/stats.hpp"

namespace persim {

// Lower-case spelling used on the command line and in reports.
const char* metric_cli_name(MetricId id);

struct EvalOptions {
    int jobs = 0;  // 0 = hardware concurrency
    LogisticModel logistic = LogisticModel::Vqeg;
};

struct PairResult {
    std::size_t row = 0;  // manifest entry index
    std::string ref, dist, distortion, category;
    double subjective = 0.0;
    std::map<std::string, double> scores;  // metric -> value
};

struct Exclusion {
    std::size_t row = 0;
    std::string path;
    std::string reason;
};

struct ReportRow {
    std::string metric;
    std::string category;  // "All" for the overall row
    int n = 0;
    std::optional<double> plcc, rmse, srocc, kcc;
    std::optional<std::array<double, 5>> beta;
    bool fit_converged = false;
};

struct EvaluationReport {
    std::string database_id;
    ScoreConvention convention = ScoreConvention::MosHigherBetter;
    LogisticModel logistic_model = LogisticModel::Vqeg;
    std::string config_fingerprint;
    std::vector<std::string> metrics;
    std::vector<PairResult> pairs;       // manifest order, excluded rows absent
    std::vector<ReportRow> rows;         // per metric: All, then categories sorted
    std::vector<Exclusion> exclusions;   // manifest order, never silent
};

// Scores every manifest pair with every requested metric, then computes
// SROCC/KCC directly and PLCC/RMSE after the monotonic regression, per
// category and overall. Undecodable or mismatched entries are excluded and
// recorded. Deterministic for a fixed manifest and config, at any job count.
EvaluationReport evaluate_database(const DatabaseManifest& manifest,
                                   const std::vector<MetricId>& metrics,
                                   const PersimConfig& cfg, const EvalOptions& opts = {});

// Canonical JSON serialization; byte-identical across runs.
std::string report_to_json(const EvaluationReport& report);

// Flat rows: metric,category,n,plcc,rmse,srocc,kcc,beta1..beta5,fit_converged.
std::string report_to_csv(const EvaluationReport& report);

void print_report_table(const EvaluationReport& report, std::ostream& os);

// CSV of (objective, regression-mapped, subjective, category) rows for one
// metric, using the overall fit. Returns the number of data rows written; the
// header is always written.
std::size_t emit_scatter(const EvaluationReport& report, const std::string& metric,
                         const std::filesystem::path& out,
                         const std::string& category_filter = "");

}  // namespace persim
