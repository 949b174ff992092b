#include "scribble/io/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "scribble/io/image_io.hpp"
#include "scribble/train/rng.hpp"

namespace scribble {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path DatasetManifest::resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
}

void DatasetManifest::validate() const {
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (e.id.empty()) throw std::invalid_argument("manifest entry with empty id");
        if (!seen.insert(e.id).second) throw std::invalid_argument("duplicate sample id '" + e.id + "'");
    }
}

DatasetManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::missing_file, "cannot open manifest " + path.string());

    DatasetManifest m;
    m.base_dir = path.parent_path();
    m.name = path.stem().string();
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!header_seen && !j.contains("id")) {
            m.name = j.value("name", m.name);
            header_seen = true;
            continue;
        }
        header_seen = true;
        try {
            ManifestEntry e{j.at("id").get<std::string>(), j.at("image").get<std::string>(),
                            j.at("gt").get<std::string>(), std::nullopt};
            if (j.contains("category") && !j["category"].is_null()) {
                e.category = j["category"].get<std::string>();
            }
            m.entries.push_back(std::move(e));
        } catch (const json::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    m.validate();
    return m;
}

void write_manifest(const DatasetManifest& manifest, const fs::path& path) {
    manifest.validate();
    std::ofstream out(path);
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write manifest " + path.string());
    out << json{{"name", manifest.name}}.dump() << '\n';
    for (const auto& e : manifest.entries) {
        json j{{"id", e.id}, {"image", e.image}, {"gt", e.gt}};
        if (e.category) j["category"] = *e.category;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write manifest " + path.string());
}

DatasetManifest make_benchmark(const DatasetManifest& manifest, int per_category, std::uint64_t seed) {
    if (per_category < 0) throw std::invalid_argument("per_category must be >= 0");
    std::map<std::string, std::vector<std::size_t>> by_category;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        const auto& e = manifest.entries[i];
        if (!e.category) throw std::invalid_argument("entry '" + e.id + "' has no category label");
        by_category[*e.category].push_back(i);
    }

    DatasetManifest out;
    out.name = manifest.name;
    out.base_dir = manifest.base_dir;
    Rng rng(seed);
    for (auto& [category, idx] : by_category) {
        // Fisher–Yates, then keep the first k in manifest order.
        for (std::size_t i = idx.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1));
            std::swap(idx[i - 1], idx[j]);
        }
        const auto k = std::min(idx.size(), static_cast<std::size_t>(per_category));
        std::vector<std::size_t> keep(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(keep.begin(), keep.end());
        for (auto i : keep) out.entries.push_back(manifest.entries[i]);
    }
    return out;
}

LoadedSample load_sample(const DatasetManifest& manifest, const ManifestEntry& entry) {
    RgbImage image = load_rgb(manifest.resolve(entry.image));
    BinaryMask gt = load_mask(manifest.resolve(entry.gt));
    if (gt.width() != image.width || gt.height() != image.height) {
        throw IoError(IoError::Kind::dimension_mismatch,
                      "sample '" + entry.id + "': mask " + std::to_string(gt.width()) + "x" +
                          std::to_string(gt.height()) + " vs image " + std::to_string(image.width) +
                          "x" + std::to_string(image.height));
    }
    return {std::move(image), std::move(gt)};
}

DatasetSource to_dataset_source(const DatasetManifest& manifest) {
    DatasetSource ds;
    ds.name = manifest.name;
    for (const auto& e : manifest.entries) ds.ids.push_back(e.id);
    ds.load = [manifest](std::size_t i) { return load_sample(manifest, manifest.entries.at(i)); };
    return ds;
}

}  // namespace scribble
