#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "persim/errors.hpp"

namespace persim {

enum class ScoreConvention { MosHigherBetter, DmosLowerBetter };

struct ManifestEntry {
    std::string ref_name;             // path strings as written in the CSV
    std::string dist_name;
    std::filesystem::path ref_path;   // resolved against the manifest directory
    std::filesystem::path dist_path;
    double score = 0.0;               // MOS or DMOS
    std::string distortion;
    std::string category;
};

struct DatabaseManifest {
    std::vector<ManifestEntry> entries;
    std::string database_id;
    ScoreConvention convention = ScoreConvention::MosHigherBetter;
};

// CSV schema: header `ref,dist,score,distortion,category`, paths relative to
// the manifest file. Optional `# key = value` directive lines before the
// header set `database` and `convention` (mos | dmos). Validation gathers
// every offense (bad rows, dangling paths, duplicates) into one ManifestError.
DatabaseManifest load_manifest(const std::filesystem::path& path);

const char* convention_name(ScoreConvention c);

}  // namespace persim
