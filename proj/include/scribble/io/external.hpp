#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "scribble/eval/harness.hpp"
#include "scribble/seg/segmenter.hpp"

namespace scribble {

/// Wire form of a request: {width, height, image, positive, negative,
/// previous_mask}, rasters as base64 PNG.
nlohmann::json request_to_json(const SegmentationRequest& request);
/// Inverse of request_to_json (identity crop). Throws on malformed payloads.
SegmentationRequest request_from_json(const nlohmann::json& body);

/// Writes the request rasters as PNG files into `dir` plus a descriptor JSON
/// naming them and the expected `output` mask path. Returns the descriptor path.
std::filesystem::path write_request_files(const SegmentationRequest& request,
                                          const std::filesystem::path& dir);
/// Reads a descriptor written by write_request_files.
SegmentationRequest read_request_files(const std::filesystem::path& descriptor);

/// Client for a segmenter served over HTTP: POST <url> with request_to_json,
/// expecting {"mask": base64 png}. `url` is "http://host:port[/path]" with the
/// path defaulting to /predict.
class HttpSegmenter final : public Segmenter {
public:
    explicit HttpSegmenter(std::string url, std::optional<int> input_size = 384,
                           int timeout_seconds = 60);

    BinaryMask predict(const SegmentationRequest& request) const override;
    std::string name() const override { return "http:" + url_; }
    std::optional<int> input_size() const override { return input_size_; }

private:
    std::string url_;
    std::string origin_;
    std::string path_;
    std::optional<int> input_size_;
    int timeout_seconds_;
};

/// Long-running child process (`/bin/sh -c command`). Per request the
/// descriptor path is written as one line to its stdin and the child answers
/// with one line holding the path of the mask it wrote. Calls are serialized.
class SubprocessSegmenter final : public Segmenter {
public:
    explicit SubprocessSegmenter(std::string command, std::optional<int> input_size = 384);
    ~SubprocessSegmenter() override;
    SubprocessSegmenter(const SubprocessSegmenter&) = delete;
    SubprocessSegmenter& operator=(const SubprocessSegmenter&) = delete;

    BinaryMask predict(const SegmentationRequest& request) const override;
    std::string name() const override { return "subprocess:" + command_; }
    std::optional<int> input_size() const override { return input_size_; }

private:
    struct Process;
    static std::unique_ptr<Process> spawn(const std::string& command);

    std::string command_;
    std::optional<int> input_size_;
    std::filesystem::path workdir_;
    mutable std::mutex mutex_;
    mutable std::unique_ptr<Process> proc_;
    mutable unsigned long counter_ = 0;
};

/// Always answers with an empty mask (cap-convention checks).
class EmptySegmenter final : public Segmenter {
public:
    BinaryMask predict(const SegmentationRequest& r) const override {
        return BinaryMask(r.width(), r.height());
    }
    std::string name() const override { return "empty"; }
};

struct SegmenterOptions {
    std::optional<int> model_input_size = 384;  // for http / subprocess
    std::uint64_t oracle_seed = 0;
};

/// Builds a factory from a spec: "oracle", "oracle:NOISE", "geodesic", "empty",
/// "http:URL" (a bare http:// URL also works) or "subprocess:COMMAND".
SegmenterFactory make_segmenter_factory(const std::string& spec, const SegmenterOptions& opt = {});

/// Single instance for specs that do not need a ground truth (everything but
/// the oracle). Throws for "oracle".
std::shared_ptr<const Segmenter> make_segmenter(const std::string& spec,
                                                const SegmenterOptions& opt = {});

}  // namespace scribble
