#include "persim/manifest.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace persim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

const char* convention_name(ScoreConvention c) {
    return c == ScoreConvention::MosHigherBetter ? "mos" : "dmos";
}

DatabaseManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("manifest: cannot open " + path.string());

    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");

    DatabaseManifest manifest;
    manifest.database_id = path.stem().string();

    std::vector<std::string> errors;
    auto offend = [&](int line_no, const std::string& what) {
        errors.push_back("line " + std::to_string(line_no) + ": " + what);
    };

    std::set<std::pair<std::string, std::string>> seen_pairs;
    bool header_seen = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        if (stripped[0] == '#') {
            if (header_seen) continue;  // comments after the header are ignored
            const std::size_t eq = stripped.find_first_of("=:");
            if (eq == std::string::npos) continue;
            const std::string key = trim(stripped.substr(1, eq - 1));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key == "database") {
                manifest.database_id = value;
            } else if (key == "convention") {
                if (value == "mos")
                    manifest.convention = ScoreConvention::MosHigherBetter;
                else if (value == "dmos")
                    manifest.convention = ScoreConvention::DmosLowerBetter;
                else
                    offend(line_no, "unknown convention '" + value + "' (expected mos or dmos)");
            }
            continue;
        }

        if (!header_seen) {
            if (stripped != "ref,dist,score,distortion,category" &&
                split_csv(stripped) != std::vector<std::string>{"ref", "dist", "score",
                                                                "distortion", "category"})
                offend(line_no, "expected header 'ref,dist,score,distortion,category'");
            header_seen = true;
            continue;
        }

        const std::vector<std::string> f = split_csv(stripped);
        if (f.size() != 5) {
            offend(line_no, "expected 5 fields, got " + std::to_string(f.size()));
            continue;
        }

        ManifestEntry e;
        bool row_ok = true;
        if (f[0].empty()) {
            offend(line_no, "empty 'ref' column");
            row_ok = false;
        }
        if (f[1].empty()) {
            offend(line_no, "empty 'dist' column");
            row_ok = false;
        }
        if (!parse_double(f[2], e.score)) {
            offend(line_no, "non-numeric 'score' column: '" + f[2] + "'");
            row_ok = false;
        }
        e.distortion = f[3];
        e.category = f[4];
        if (e.category.empty()) {
            offend(line_no, "empty 'category' column");
            row_ok = false;
        }
        if (!row_ok) continue;

        e.ref_name = f[0];
        e.dist_name = f[1];
        e.ref_path = base / f[0];
        e.dist_path = base / f[1];
        for (const auto* p : {&e.ref_path, &e.dist_path}) {
            std::error_code ec;
            if (!std::filesystem::is_regular_file(*p, ec))
                offend(line_no, "image path does not resolve: " + p->string());
        }
        if (!seen_pairs.insert({f[0], f[1]}).second)
            offend(line_no, "duplicate (ref, dist) pair: " + f[0] + ", " + f[1]);

        manifest.entries.push_back(std::move(e));
    }

    if (!header_seen) errors.insert(errors.begin(), "missing header row");
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "manifest " << path.string() << ": " << errors.size() << " problem(s):";
        for (const std::string& e : errors) msg << "\n  " << e;
        throw ManifestError(msg.str());
    }
    return manifest;
}

}  // namespace persim
