#include "persim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace persim {

using nlohmann::json;

void PersimConfig::validate() const {
    if (scales.empty())
        throw ParameterError("config: scales must be nonempty");
    double prev = 1.0 + 1e-12;
    for (const ScaleParams& s : scales) {
        if (!(s.ratio > 0.0 && s.ratio <= 1.0))
            throw ParameterError("config: scale ratio must lie in (0,1], got " +
                                 std::to_string(s.ratio));
        if (s.ratio >= prev)
            throw ParameterError("config: scale ratios must be strictly descending");
        prev = s.ratio;
        if (s.sigma <= 0.0)
            throw ParameterError("config: sigma must be positive");
        if (s.kernel_size < 1)
            throw ParameterError("config: kernel_size must be at least 1");
    }
    if (log_power <= 0.0 || chroma_power <= 0.0)
        throw ParameterError("config: fusion powers must be positive");
    if (pooling_power < 1.0)
        throw ParameterError("config: pooling_power must be at least 1");
    constants.validate();
    if (resample != "bicubic")
        throw ParameterError("config: unsupported resample method '" + resample + "'");
}

int PersimConfig::effective_kernel_size(std::size_t i) const {
    int size = scales.at(i).kernel_size;
    if (!literal_even_kernels && size % 2 == 0) size += 1;
    return size;
}

namespace {

void read_constants(const json& j, SimilarityConstants& c) {
    c.c1 = j.value("c1", c.c1);
    c.c2 = j.value("c2", c.c2);
    c.c3 = j.value("c3", c.c3);
    c.c4 = j.value("c4", c.c4);
    c.c5 = j.value("c5", c.c5);
    c.c6 = j.value("c6", c.c6);
}

}  // namespace

PersimConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParameterError("config: top-level value must be an object");

    PersimConfig cfg;
    try {
        if (j.contains("scales")) {
            cfg.scales.clear();
            for (const json& s : j.at("scales")) {
                ScaleParams p;
                p.ratio = s.at("ratio").get<double>();
                p.sigma = s.at("sigma").get<double>();
                p.kernel_size = s.at("kernel_size").get<int>();
                cfg.scales.push_back(p);
            }
        }
        cfg.log_power = j.value("log_power", cfg.log_power);
        cfg.chroma_power = j.value("chroma_power", cfg.chroma_power);
        cfg.pooling_power = j.value("pooling_power", cfg.pooling_power);
        if (j.contains("constants")) read_constants(j.at("constants"), cfg.constants);
        cfg.resample = j.value("resample", cfg.resample);
        cfg.clamp_negative_similarity =
            j.value("clamp_negative_similarity", cfg.clamp_negative_similarity);
        cfg.literal_even_kernels = j.value("literal_even_kernels", cfg.literal_even_kernels);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

PersimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const PersimConfig& cfg) {
    json scales = json::array();
    for (const ScaleParams& s : cfg.scales)
        scales.push_back({{"ratio", s.ratio}, {"sigma", s.sigma}, {"kernel_size", s.kernel_size}});
    const json j{
        {"scales", scales},
        {"log_power", cfg.log_power},
        {"chroma_power", cfg.chroma_power},
        {"pooling_power", cfg.pooling_power},
        {"constants",
         {{"c1", cfg.constants.c1},
          {"c2", cfg.constants.c2},
          {"c3", cfg.constants.c3},
          {"c4", cfg.constants.c4},
          {"c5", cfg.constants.c5},
          {"c6", cfg.constants.c6}}},
        {"resample", cfg.resample},
        {"clamp_negative_similarity", cfg.clamp_negative_similarity},
        {"literal_even_kernels", cfg.literal_even_kernels},
    };
    return j.dump();
}

std::string config_fingerprint(const PersimConfig& cfg) {
    const std::string text = config_to_json_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace persim
