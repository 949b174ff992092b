#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scribble/eval/harness.hpp"

namespace scribble {

struct ManifestEntry {
    std::string id;
    std::string image;  // relative paths resolve against the manifest's directory
    std::string gt;
    std::optional<std::string> category;
    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
    std::string name;
    std::vector<ManifestEntry> entries;
    /// Directory relative entry paths resolve against; not serialized.
    std::filesystem::path base_dir;

    std::filesystem::path resolve(const std::string& p) const;
    /// Throws on duplicate ids.
    void validate() const;

    friend bool operator==(const DatasetManifest& a, const DatasetManifest& b) {
        return a.name == b.name && a.entries == b.entries;
    }
};

/// Line-delimited JSON: a header line {"name": ...} followed by one
/// {"id", "image", "gt", "category"?} object per line.
DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Per category (sorted by name), min(per_category, available) entries chosen by
/// a seeded shuffle, kept in manifest order. Throws when an entry has no
/// category.
DatasetManifest make_benchmark(const DatasetManifest& manifest, int per_category, std::uint64_t seed);

/// Loads the image and gt of one entry. Throws IoError with kind missing_file,
/// decode_failed or dimension_mismatch.
LoadedSample load_sample(const DatasetManifest& manifest, const ManifestEntry& entry);

DatasetSource to_dataset_source(const DatasetManifest& manifest);

}  // namespace scribble
