#pragma once

#include <string>
#include <vector>

#include "persim/color.hpp"
#include "persim/config.hpp"
#include "persim/image.hpp"
#include "persim/similarity.hpp"

namespace persim {

enum class MetricId { PerSIM, PerSIM_SR, LogSIM, PSNR, RMSE };

const char* metric_name(MetricId id);
MetricId metric_from_name(const std::string& name);  // lower-case CLI spelling

struct MetricScore {
    double value = 0.0;
    MetricId id = MetricId::PerSIM;
    std::string reference_id;
    std::string distorted_id;
};

// Pixel-wise min(logsim^log_power, asim^chroma_power, bsim^chroma_power).
ImagePlane fuse_channels(const SimilarityMap& logsim, const SimilarityMap& asim,
                         const SimilarityMap& bsim, double log_power, double chroma_power);

// Mean pooling followed by the monotonic power map. A negative mean (possible
// only with negative-similarity clamping off) pools to 0.
double pool_and_map(const ImagePlane& map, double c7);

// Pixel-wise K-th root of the product of K same-size maps. K == 1 is the
// identity; for K >= 2 negative products are floored to 0 before the root.
ImagePlane geometric_mean_maps(const std::vector<ImagePlane>& maps);

// Full-resolution metric: Eq.-(6)/(7) path with the first scale's parameters.
MetricScore persim_single_resolution(const LabImage& ref, const LabImage& dist,
                                     const PersimConfig& cfg);

// Multi-resolution PerSIM: per scale, downsample, compute LoG/a/b similarity
// maps, upsample back; geometric-mean across scales per channel; min-fuse;
// mean pool and raise to c7.
MetricScore persim(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg);

// Ablation: the same multi-resolution pipeline fusing only the LoG channel.
MetricScore logsim_metric(const LabImage& ref, const LabImage& dist, const PersimConfig& cfg);

// Smallest min(rows, cols) accepted by persim under this config.
int min_image_extent(const PersimConfig& cfg);

}  // namespace persim
