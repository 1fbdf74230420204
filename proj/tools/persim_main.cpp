#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persim/baselines.hpp"
#include "persim/evaluate.hpp"
#include "persim/image_io.hpp"

namespace {

// 0 success, 1 usage, 2 I/O or decode, 3 internal numerical failure
enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

persim::PersimConfig load_config_or_default(const std::string& path) {
    if (path.empty()) return persim::PersimConfig{};
    return persim::load_config(path);
}

int run_compare(const std::string& ref_path, const std::string& dist_path,
                const std::string& config_path, bool as_json) {
    const persim::PersimConfig cfg = load_config_or_default(config_path);

    const persim::RgbImage ref_rgb = persim::decode_image(ref_path);
    const persim::RgbImage dist_rgb = persim::decode_image(dist_path);
    if (ref_rgb.rows() != dist_rgb.rows() || ref_rgb.cols() != dist_rgb.cols()) {
        std::cerr << "error: image dimensions differ (" << ref_rgb.rows() << "x" << ref_rgb.cols()
                  << " vs " << dist_rgb.rows() << "x" << dist_rgb.cols() << ")\n";
        return kUsage;
    }

    const persim::LabImage ref = persim::rgb_to_lab(ref_rgb);
    const persim::LabImage dist = persim::rgb_to_lab(dist_rgb);

    const double v_persim = persim::persim(ref, dist, cfg).value;
    const double v_sr = persim::persim_single_resolution(ref, dist, cfg).value;
    const double v_logsim = persim::logsim_metric(ref, dist, cfg).value;
    const double v_psnr = persim::psnr(ref_rgb, dist_rgb);
    const double v_rmse = persim::rmse(ref_rgb, dist_rgb);

    if (as_json) {
        nlohmann::json j{{"persim", v_persim}, {"persim_sr", v_sr}, {"logsim", v_logsim},
                         {"psnr", v_psnr},     {"rmse", v_rmse},
                         {"config_fingerprint", persim::config_fingerprint(cfg)},
                         {"ref", ref_path},    {"dist", dist_path}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("PerSIM %.9f\n", v_persim);
        std::printf("PerSIM_SR %.9f\n", v_sr);
        std::printf("LogSIM %.9f\n", v_logsim);
        std::printf("PSNR %.4f\n", v_psnr);
        std::printf("RMSE %.4f\n", v_rmse);
    }
    return kOk;
}

int run_evaluate(const std::string& manifest_path, const std::vector<std::string>& metric_names,
                 const std::string& out_path, const std::string& csv_path,
                 const std::string& scatter_path, const std::string& scatter_metric,
                 const std::string& scatter_category, const std::string& config_path, int jobs,
                 const std::string& logistic) {
    const persim::PersimConfig cfg = load_config_or_default(config_path);

    std::vector<persim::MetricId> metrics;
    for (const std::string& name : metric_names)
        metrics.push_back(persim::metric_from_name(name));

    persim::EvalOptions opts;
    opts.jobs = jobs;
    if (logistic == "vqeg")
        opts.logistic = persim::LogisticModel::Vqeg;
    else if (logistic == "literal")
        opts.logistic = persim::LogisticModel::LiteralPrint;
    else
        throw persim::ParameterError("--logistic must be vqeg or literal");

    const persim::DatabaseManifest manifest = persim::load_manifest(manifest_path);
    const persim::EvaluationReport report = persim::evaluate_database(manifest, metrics, cfg, opts);

    if (!out_path.empty()) {
        std::ofstream fs(out_path, std::ios::trunc);
        if (!fs) throw persim::IoError("cannot write " + out_path);
        fs << persim::report_to_json(report);
    }
    if (!csv_path.empty()) {
        std::ofstream fs(csv_path, std::ios::trunc);
        if (!fs) throw persim::IoError("cannot write " + csv_path);
        fs << persim::report_to_csv(report);
    }
    if (!scatter_path.empty()) {
        const std::string metric = scatter_metric.empty() ? report.metrics.front() : scatter_metric;
        const std::size_t rows =
            persim::emit_scatter(report, metric, scatter_path, scatter_category);
        if (rows == 0)
            std::cerr << "warning: scatter filter matched no pairs; wrote header only\n";
    }
    persim::print_report_table(report, std::cout);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PerSIM full-reference image quality metric"};
    app.require_subcommand(1);

    std::string cmp_ref, cmp_dist, cmp_config;
    bool cmp_json = false;
    CLI::App* cmp = app.add_subcommand("compare", "Score one reference/distorted image pair");
    cmp->add_option("ref", cmp_ref, "reference image (png, bmp or jpeg)")->required();
    cmp->add_option("dist", cmp_dist, "distorted image")->required();
    cmp->add_flag("--json", cmp_json, "emit a single JSON object");
    cmp->add_option("--config", cmp_config, "JSON config file");

    std::string ev_manifest, ev_out, ev_csv, ev_scatter, ev_scatter_metric, ev_scatter_category;
    std::string ev_config, ev_logistic = "vqeg";
    std::vector<std::string> ev_metrics{"persim"};
    int ev_jobs = 0;
    CLI::App* ev = app.add_subcommand("evaluate", "Score an IQA database manifest");
    ev->add_option("--manifest", ev_manifest, "manifest CSV")->required();
    ev->add_option("--metrics", ev_metrics,
                   "comma-separated metrics: persim,persim_sr,logsim,psnr,rmse")
        ->delimiter(',');
    ev->add_option("--out", ev_out, "write full JSON report here");
    ev->add_option("--csv", ev_csv, "write flat CSV rows here");
    ev->add_option("--scatter", ev_scatter, "write scatter-plot CSV here");
    ev->add_option("--scatter-metric", ev_scatter_metric,
                   "metric for the scatter file (default: first of --metrics)");
    ev->add_option("--scatter-category", ev_scatter_category, "restrict scatter to one category");
    ev->add_option("--config", ev_config, "JSON config file");
    ev->add_option("--jobs", ev_jobs, "worker threads (default: hardware)");
    ev->add_option("--logistic", ev_logistic, "regression variant: vqeg | literal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (cmp->parsed())
            return run_compare(cmp_ref, cmp_dist, cmp_config, cmp_json);
        return run_evaluate(ev_manifest, ev_metrics, ev_out, ev_csv, ev_scatter, ev_scatter_metric,
                            ev_scatter_category, ev_config, ev_jobs, ev_logistic);
    } catch (const persim::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const persim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const persim::DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const persim::ManifestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kNumerical;
    }
}
