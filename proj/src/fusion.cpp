#include "persim/fusion.hpp"

#include <cmath>

#include "persim/log_features.hpp"
#include "persim/resample.hpp"

namespace persim {

const char* metric_name(MetricId id) {
    switch (id) {
        case MetricId::PerSIM: return "PerSIM";
        case MetricId::PerSIM_SR: return "PerSIM_SR";
        case MetricId::LogSIM: return "LogSIM";
        case MetricId::PSNR: return "PSNR";
        case MetricId::RMSE: return "RMSE";
    }
    return "?";
}

MetricId metric_from_name(const std::string& name) {
    if (name == "persim") return MetricId::PerSIM;
    if (name == "persim_sr") return MetricId::PerSIM_SR;
    if (name == "logsim") return MetricId::LogSIM;
    if (name == "psnr") return MetricId::PSNR;
    if (name == "rmse") return MetricId::RMSE;
    throw ParameterError("unknown metric '" + name +
                         "' (expected persim, persim_sr, logsim, psnr or rmse)");
}

ImagePlane fuse_channels(const SimilarityMap& logsim, const SimilarityMap& asim,
                         const SimilarityMap& bsim, double log_power, double chroma_power) {
    require_same_size(logsim.values, asim.values, "fuse_channels");
    require_same_size(logsim.values, bsim.values, "fuse_channels");

    ImagePlane out(logsim.values.rows(), logsim.values.cols());
    const double* l = logsim.values.data();
    const double* a = asim.values.data();
    const double* b = bsim.values.data();
    double* o = out.data();
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lp = std::pow(l[i], log_power);
        const double ap = std::pow(a[i], chroma_power);
        const double bp = std::pow(b[i], chroma_power);
        o[i] = std::min(lp, std::min(ap, bp));
    }
    return out;
}

double pool_and_map(const ImagePlane& map, double c7) {
    if (map.empty())
        throw DimensionError("pool_and_map: empty map");
    const double mean = map.mean();
    if (mean < 0.0) return 0.0;
    return std::pow(mean, c7);
}

ImagePlane geometric_mean_maps(const std::vector<ImagePlane>& maps) {
    if (maps.empty())
        throw DimensionError("geometric_mean_maps: need at least one map");
    if (maps.size() == 1) return maps.front();

    for (std::size_t k = 1; k < maps.size(); ++k)
        require_same_size(maps[0], maps[k], "geometric_mean_maps");

    ImagePlane out = maps[0];
    double* o = out.data();
    const std::size_t n = out.size();
    for (std::size_t k = 1; k < maps.size(); ++k) {
        const double* m = maps[k].data();
        for (std::size_t i = 0; i < n; ++i) o[i] *= m[i];
    }
    // fractional roots of negative products are undefined; floor them
    const double inv_k = 1.0 / static_cast<double>(maps.size());
    for (std::size_t i = 0; i < n; ++i)
        o[i] = o[i] <= 0.0 ? 0.0 : std::pow(o[i], inv_k);
    return out;
}

namespace {

MetricScore make_score(double value, MetricId id) {
    MetricScore score;
    score.value = value;
    score.id = id;
    return score;
}

struct ScaleMaps {
    ImagePlane logsim, asim, bsim;
};

// Similarity maps for one scale, interpolated back to full resolution.
ScaleMaps maps_at_scale(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg,
                        std::size_t scale_index, bool want_chroma) {
    const ScaleParams& sp = cfg.scales[scale_index];
    const int full_rows = ref.rows();
    const int full_cols = ref.cols();
    const int rows = scaled_extent(full_rows, sp.ratio);
    const int cols = scaled_extent(full_cols, sp.ratio);

    const bool resampled = rows != full_rows || cols != full_cols;
    const LogKernel kernel =
        make_log_kernel(sp.sigma, cfg.effective_kernel_size(scale_index));

    ScaleMaps out;
    {
        const ImagePlane log1 = convolve(resize_bicubic(ref.L, rows, cols), kernel);
        const ImagePlane log2 = convolve(resize_bicubic(dist.L, rows, cols), kernel);
        out.logsim = similarity_plane(log1, log2, cfg.constants.c1, cfg.constants.c2);
    }
    if (want_chroma) {
        out.asim = similarity_plane(resize_bicubic(ref.a, rows, cols),
                                    resize_bicubic(dist.a, rows, cols), cfg.constants.c3,
                                    cfg.constants.c4);
        out.bsim = similarity_plane(resize_bicubic(ref.b, rows, cols),
                                    resize_bicubic(dist.b, rows, cols), cfg.constants.c5,
                                    cfg.constants.c6);
    }

    auto finish = [&](ImagePlane& map) {
        if (cfg.clamp_negative_similarity) clamp_negatives(map);
        if (resampled) {
            map = resize_bicubic(map, full_rows, full_cols);
            // bicubic overshoot would leave the similarity range
            double* p = map.data();
            for (std::size_t i = 0; i < map.size(); ++i) p[i] = std::clamp(p[i], -1.0, 1.0);
        }
    };
    finish(out.logsim);
    if (want_chroma) {
        finish(out.asim);
        finish(out.bsim);
    }
    return out;
}

void check_size(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg,
                const char* what) {
    require_same_size(ref, dist, what);
    const int need = min_image_extent(cfg);
    if (std::min(ref.rows(), ref.cols()) < need)
        throw ParameterError(std::string(what) + ": image too small for the smallest scale; " +
                             "min(rows, cols) must be at least " + std::to_string(need));
}

}  // namespace

int min_image_extent(const PersimConfig& cfg) {
    int need = 1;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
        const int k = cfg.effective_kernel_size(i);
        const int at_full = static_cast<int>(std::ceil(k / cfg.scales[i].ratio));
        need = std::max(need, at_full);
    }
    return need;
}

MetricScore persim_single_resolution(const LabImage& ref, const LabImage& dist,
                                     const PersimConfig& cfg) {
    cfg.validate();
    require_same_size(ref, dist, "persim_single_resolution");

    const LogKernel kernel =
        make_log_kernel(cfg.scales.front().sigma, cfg.effective_kernel_size(0));
    const ImagePlane log1 = convolve(ref.L, kernel);
    const ImagePlane log2 = convolve(dist.L, kernel);
    ImagePlane logsim = similarity_plane(log1, log2, cfg.constants.c1, cfg.constants.c2);
    ImagePlane asim = similarity_plane(ref.a, dist.a, cfg.constants.c3, cfg.constants.c4);
    ImagePlane bsim = similarity_plane(ref.b, dist.b, cfg.constants.c5, cfg.constants.c6);
    if (cfg.clamp_negative_similarity) {
        clamp_negatives(logsim);
        clamp_negatives(asim);
        clamp_negatives(bsim);
    }

    const ImagePlane fused =
        fuse_channels({std::move(logsim), SimilarityChannel::LoG, 1.0},
                      {std::move(asim), SimilarityChannel::A, 1.0},
                      {std::move(bsim), SimilarityChannel::B, 1.0}, cfg.log_power,
                      cfg.chroma_power);
    return make_score(pool_and_map(fused, cfg.pooling_power), MetricId::PerSIM_SR);
}

MetricScore persim(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg) {
    cfg.validate();
    check_size(ref, dist, cfg, "persim");

    std::vector<ImagePlane> logsims, asims, bsims;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
        ScaleMaps maps = maps_at_scale(ref, dist, cfg, i, /*want_chroma=*/true);
        logsims.push_back(std::move(maps.logsim));
        asims.push_back(std::move(maps.asim));
        bsims.push_back(std::move(maps.bsim));
    }

    const ImagePlane fused =
        fuse_channels({geometric_mean_maps(logsims), SimilarityChannel::LoG, 0.0},
                      {geometric_mean_maps(asims), SimilarityChannel::A, 0.0},
                      {geometric_mean_maps(bsims), SimilarityChannel::B, 0.0}, cfg.log_power,
                      cfg.chroma_power);
    return make_score(pool_and_map(fused, cfg.pooling_power), MetricId::PerSIM);
}

MetricScore logsim_metric(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg) {
    cfg.validate();
    check_size(ref, dist, cfg, "logsim");

    std::vector<ImagePlane> logsims;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
        logsims.push_back(maps_at_scale(ref, dist, cfg, i, /*want_chroma=*/false).logsim);

    ImagePlane fused = geometric_mean_maps(logsims);
    double* p = fused.data();
    for (std::size_t i = 0; i < fused.size(); ++i) p[i] = std::pow(p[i], cfg.log_power);
    return make_score(pool_and_map(fused, cfg.pooling_power), MetricId::LogSIM);
}

}  // namespace persim
