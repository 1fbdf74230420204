#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "persim/log_features.hpp"
#include "persim/similarity.hpp"

namespace persim {

// Every tunable constant of the metric. Defaults reproduce the published
// parameterization: scales (1.0, 10.0, 13x13), (0.6, 8.0, 4x4), (0.4, 7.0, 2x2),
// LoG power 4, chroma power 2, pooling power 25, constants 0.001.
struct PersimConfig {
    std::vector<ScaleParams> scales{{1.0, 10.0, 13}, {0.6, 8.0, 4}, {0.4, 7.0, 2}};
    double log_power = 4.0;
    double chroma_power = 2.0;
    double pooling_power = 25.0;  // c7
    SimilarityConstants constants;
    std::string resample = "bicubic";
    bool clamp_negative_similarity = false;
    // Table lists 4x4 and 2x2 windows; by default those are widened to the
    // next odd size so the kernel has a center. This flag selects the literal
    // even windows (anchored at the top-left of the central block) instead.
    bool literal_even_kernels = false;

    void validate() const;

    // Window edge length actually used for the kernel at scale index i.
    int effective_kernel_size(std::size_t i) const;
};

PersimConfig config_from_json_text(const std::string& text);
PersimConfig load_config(const std::filesystem::path& path);
std::string config_to_json_text(const PersimConfig& cfg);

// FNV-1a 64-bit hash of the canonical JSON form, as 16 hex digits. Stable
// across runs and platforms; identifies the parameterization in reports.
std::string config_fingerprint(const PersimConfig& cfg);

}  // namespace persim
