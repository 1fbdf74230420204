#include "persim/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "persim/baselines.hpp"
#include "persim/image_io.hpp"

namespace persim {

using nlohmann::json;

const char* metric_cli_name(MetricId id) {
    switch (id) {
        case MetricId::PerSIM: return "persim";
        case MetricId::PerSIM_SR: return "persim_sr";
        case MetricId::LogSIM: return "logsim";
        case MetricId::PSNR: return "psnr";
        case MetricId::RMSE: return "rmse";
    }
    return "?";
}

namespace {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<int>(std::min<std::size_t>(jobs, count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct PreparedImage {
    RgbImage rgb;
    LabImage lab;
};

PreparedImage prepare(const std::filesystem::path& path) {
    PreparedImage img;
    img.rgb = decode_image(path);
    img.lab = rgb_to_lab(img.rgb);
    return img;
}

double compute_metric(MetricId id, const PreparedImage& ref, const PreparedImage& dist,
                      const PersimConfig& cfg) {
    switch (id) {
        case MetricId::PerSIM: return persim(ref.lab, dist.lab, cfg).value;
        case MetricId::PerSIM_SR: return persim_single_resolution(ref.lab, dist.lab, cfg).value;
        case MetricId::LogSIM: return logsim_metric(ref.lab, dist.lab, cfg).value;
        case MetricId::PSNR: return psnr(ref.rgb, dist.rgb);
        case MetricId::RMSE: return rmse(ref.rgb, dist.rgb);
    }
    throw ParameterError("unknown metric id");
}

struct CategoryStats {
    PairedSamples samples;
};

void fill_row(ReportRow& row, const PairedSamples& samples, ScoreConvention convention,
              LogisticModel model) {
    row.n = static_cast<int>(samples.size());

    // rank statistics align orientation by negating DMOS
    PairedSamples ranked = samples;
    if (convention == ScoreConvention::DmosLowerBetter)
        for (double& v : ranked.subjective) v = -v;
    try {
        row.srocc = spearman(ranked);
    } catch (const std::invalid_argument&) {
    }
    try {
        row.kcc = kendall(ranked);
    } catch (const std::invalid_argument&) {
    }

    // linearity after the monotonic regression (absorbs orientation itself)
    if (samples.size() >= 5) {
        try {
            const RegressionResult reg = plcc_rmse_after_regression(samples, model);
            row.plcc = reg.plcc;
            row.rmse = reg.rmse;
            row.beta = reg.fit.beta;
            row.fit_converged = reg.fit.converged;
        } catch (const std::invalid_argument&) {
        }
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

EvaluationReport evaluate_database(const DatabaseManifest& manifest,
                                   const std::vector<MetricId>& metrics, const PersimConfig& cfg,
                                   const EvalOptions& opts) {
    if (metrics.empty())
        throw ParameterError("evaluate: at least one metric required");
    cfg.validate();

    EvaluationReport report;
    report.database_id = manifest.database_id;
    report.convention = manifest.convention;
    report.logistic_model = opts.logistic;
    report.config_fingerprint = config_fingerprint(cfg);
    for (MetricId m : metrics) report.metrics.push_back(metric_cli_name(m));

    const std::size_t n = manifest.entries.size();
    std::vector<std::optional<PairResult>> results(n);
    std::vector<std::optional<Exclusion>> excluded(n);

    // group rows by reference so each reference is decoded and converted once
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    {
        std::map<std::string, std::size_t> group_of;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string key = manifest.entries[i].ref_path.string();
            auto [it, inserted] = group_of.try_emplace(key, groups.size());
            if (inserted) groups.push_back({key, {}});
            groups[it->second].second.push_back(i);
        }
    }

    for (const auto& [ref_key, rows] : groups) {
        PreparedImage ref;
        try {
            ref = prepare(ref_key);
        } catch (const std::runtime_error& e) {
            for (std::size_t i : rows)
                excluded[i] = Exclusion{i, manifest.entries[i].ref_name,
                                        std::string("reference: ") + e.what()};
            continue;
        }

        parallel_for(rows.size(), opts.jobs, [&, &rows = rows](std::size_t k) {
            const std::size_t i = rows[k];
            const ManifestEntry& entry = manifest.entries[i];
            try {
                const PreparedImage dist = prepare(entry.dist_path);
                if (dist.rgb.rows() != ref.rgb.rows() || dist.rgb.cols() != ref.rgb.cols()) {
                    excluded[i] = Exclusion{i, entry.dist_name, "dimension mismatch vs reference"};
                    return;
                }
                PairResult pr;
                pr.row = i;
                pr.ref = entry.ref_name;
                pr.dist = entry.dist_name;
                pr.distortion = entry.distortion;
                pr.category = entry.category;
                pr.subjective = entry.score;
                for (MetricId m : metrics)
                    pr.scores[metric_cli_name(m)] = compute_metric(m, ref, dist, cfg);
                results[i] = std::move(pr);
            } catch (const IoError& e) {
                excluded[i] = Exclusion{i, entry.dist_name, e.what()};
            } catch (const DecodeError& e) {
                excluded[i] = Exclusion{i, entry.dist_name, e.what()};
            } catch (const ParameterError& e) {
                // config was validated upfront, so this is pair-specific
                // (e.g. image smaller than the smallest scale's kernel)
                excluded[i] = Exclusion{i, entry.dist_name, e.what()};
            }
        });
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (results[i]) report.pairs.push_back(std::move(*results[i]));
        else if (excluded[i]) report.exclusions.push_back(std::move(*excluded[i]));
    }

    // per-category and overall statistics
    std::set<std::string> categories;
    for (const PairResult& p : report.pairs) categories.insert(p.category);

    for (MetricId m : metrics) {
        const std::string name = metric_cli_name(m);

        std::vector<std::string> order{"All"};
        order.insert(order.end(), categories.begin(), categories.end());
        for (const std::string& cat : order) {
            ReportRow row;
            row.metric = name;
            row.category = cat;
            PairedSamples samples;
            for (const PairResult& p : report.pairs) {
                if (cat != "All" && p.category != cat) continue;
                samples.objective.push_back(p.scores.at(name));
                samples.subjective.push_back(p.subjective);
            }
            row.n = static_cast<int>(samples.size());
            if (samples.size() >= 3)
                fill_row(row, samples, manifest.convention, opts.logistic);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string report_to_json(const EvaluationReport& report) {
    json j;
    j["database"] = report.database_id;
    j["convention"] = convention_name(report.convention);
    j["logistic"] = report.logistic_model == LogisticModel::Vqeg ? "vqeg" : "literal";
    j["config_fingerprint"] = report.config_fingerprint;
    j["metrics"] = report.metrics;

    json pairs = json::array();
    for (const PairResult& p : report.pairs) {
        json scores;
        for (const auto& [k, v] : p.scores) scores[k] = v;
        pairs.push_back({{"row", p.row},
                         {"ref", p.ref},
                         {"dist", p.dist},
                         {"distortion", p.distortion},
                         {"category", p.category},
                         {"subjective", p.subjective},
                         {"scores", scores}});
    }
    j["pairs"] = pairs;

    json rows = json::array();
    for (const ReportRow& r : report.rows) {
        json row{{"metric", r.metric}, {"category", r.category}, {"n", r.n}};
        row["plcc"] = r.plcc ? json(*r.plcc) : json(nullptr);
        row["rmse"] = r.rmse ? json(*r.rmse) : json(nullptr);
        row["srocc"] = r.srocc ? json(*r.srocc) : json(nullptr);
        row["kcc"] = r.kcc ? json(*r.kcc) : json(nullptr);
        if (r.beta) {
            row["beta"] = std::vector<double>(r.beta->begin(), r.beta->end());
            row["fit_converged"] = r.fit_converged;
        } else {
            row["beta"] = json(nullptr);
        }
        rows.push_back(std::move(row));
    }
    j["results"] = rows;

    json excl = json::array();
    for (const Exclusion& e : report.exclusions)
        excl.push_back({{"row", e.row}, {"path", e.path}, {"reason", e.reason}});
    j["excluded"] = excl;

    return j.dump(2) + "\n";
}

std::string report_to_csv(const EvaluationReport& report) {
    std::string out = "metric,category,n,plcc,rmse,srocc,kcc,beta1,beta2,beta3,beta4,beta5,"
                      "fit_converged\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : ""; };
    for (const ReportRow& r : report.rows) {
        out += r.metric + "," + r.category + "," + std::to_string(r.n) + ",";
        out += cell(r.plcc) + "," + cell(r.rmse) + "," + cell(r.srocc) + "," + cell(r.kcc);
        for (int i = 0; i < 5; ++i)
            out += "," + (r.beta ? format_double((*r.beta)[i]) : std::string());
        out += std::string(",") + (r.beta ? (r.fit_converged ? "true" : "false") : "") + "\n";
    }
    return out;
}

void print_report_table(const EvaluationReport& report, std::ostream& os) {
    os << "database: " << report.database_id
       << "  convention: " << convention_name(report.convention)
       << "  config: " << report.config_fingerprint << "\n";
    os << "pairs scored: " << report.pairs.size()
       << "  excluded: " << report.exclusions.size() << "\n\n";

    auto num = [](const std::optional<double>& v) {
        if (!v) return std::string("   --   ");
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%8.4f", *v);
        return std::string(buf);
    };
    os << std::left << std::setw(10) << "metric" << std::setw(14) << "category" << std::right
       << std::setw(6) << "n" << std::setw(9) << "PLCC" << std::setw(9) << "RMSE" << std::setw(9)
       << "SROCC" << std::setw(9) << "KCC" << "\n";
    for (const ReportRow& r : report.rows) {
        os << std::left << std::setw(10) << r.metric << std::setw(14) << r.category << std::right
           << std::setw(6) << r.n << " " << num(r.plcc) << num(r.rmse) << num(r.srocc)
           << num(r.kcc) << "\n";
    }
    if (!report.exclusions.empty()) {
        os << "\nexcluded entries:\n";
        for (const Exclusion& e : report.exclusions)
            os << "  row " << e.row << " (" << e.path << "): " << e.reason << "\n";
    }
}

std::size_t emit_scatter(const EvaluationReport& report, const std::string& metric,
                         const std::filesystem::path& out, const std::string& category_filter) {
    if (std::find(report.metrics.begin(), report.metrics.end(), metric) == report.metrics.end())
        throw ParameterError("scatter: metric '" + metric + "' was not evaluated");

    const ReportRow* all_row = nullptr;
    for (const ReportRow& r : report.rows)
        if (r.metric == metric && r.category == "All") all_row = &r;
    if (!all_row || !all_row->beta)
        throw ParameterError("scatter: no overall regression fit available for '" + metric + "'");

    LogisticFit fit;
    fit.beta = *all_row->beta;
    fit.model = report.logistic_model;

    std::ofstream fs(out, std::ios::trunc);
    if (!fs) throw IoError("scatter: cannot write " + out.string());
    fs << "objective,mapped,subjective,category\n";

    std::size_t rows = 0;
    for (const PairResult& p : report.pairs) {
        if (!category_filter.empty() && p.category != category_filter) continue;
        const double objective = p.scores.at(metric);
        fs << format_double(objective) << "," << format_double(logistic_eval(fit, objective))
           << "," << format_double(p.subjective) << "," << p.category << "\n";
        ++rows;
    }
    if (!fs) throw IoError("scatter: short write: " + out.string());
    return rows;
}

}  // namespace persim
