#include "scribble/io/external.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>

#include "scribble/io/image_io.hpp"
#include "scribble/seg/geodesic.hpp"
#include "scribble/seg/oracle.hpp"
#include "scribble/train/rng.hpp"

namespace scribble {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string b64png(const BinaryMask& m) { return base64_encode(encode_png(m)); }

BinaryMask mask_field(const json& body, const char* key, int w, int h) {
    if (!body.contains(key) || body[key].is_null()) return BinaryMask(w, h);
    BinaryMask m = decode_mask(base64_decode(body[key].get<std::string>()));
    if (m.width() != w || m.height() != h) {
        throw IoError(IoError::Kind::dimension_mismatch, std::string(key) + " differs from image size");
    }
    return m;
}

SegmentationRequest assemble(RgbImage image, BinaryMask pos, BinaryMask neg, BinaryMask prev) {
    ScribbleMaps maps(image.width, image.height);
    maps.add(pos, Polarity::positive);
    maps.add(neg, Polarity::negative);
    return make_request(std::move(image), std::move(maps), std::move(prev));
}

}  // namespace

json request_to_json(const SegmentationRequest& request) {
    return {{"width", request.width()},
            {"height", request.height()},
            {"image", base64_encode(encode_png(request.image))},
            {"positive", b64png(request.scribbles.positive())},
            {"negative", b64png(request.scribbles.negative())},
            {"previous_mask", b64png(request.previous_mask)}};
}

SegmentationRequest request_from_json(const json& body) {
    if (!body.is_object() || !body.contains("image")) {
        throw std::invalid_argument("request body needs an 'image' field");
    }
    RgbImage image = decode_rgb(base64_decode(body["image"].get<std::string>()));
    const int w = image.width, h = image.height;
    if ((body.contains("width") && body["width"] != w) || (body.contains("height") && body["height"] != h)) {
        throw std::invalid_argument("declared width/height do not match the image");
    }
    return assemble(std::move(image), mask_field(body, "positive", w, h),
                    mask_field(body, "negative", w, h), mask_field(body, "previous_mask", w, h));
}

fs::path write_request_files(const SegmentationRequest& request, const fs::path& dir) {
    fs::create_directories(dir);
    save_rgb(request.image, dir / "image.png");
    save_mask(request.scribbles.positive(), dir / "positive.png");
    save_mask(request.scribbles.negative(), dir / "negative.png");
    save_mask(request.previous_mask, dir / "previous.png");
    const json desc{{"width", request.width()},
                    {"height", request.height()},
                    {"image", (dir / "image.png").string()},
                    {"positive", (dir / "positive.png").string()},
                    {"negative", (dir / "negative.png").string()},
                    {"previous_mask", (dir / "previous.png").string()},
                    {"output", (dir / "mask.png").string()}};
    const fs::path path = dir / "request.json";
    std::ofstream(path) << desc.dump(2) << '\n';
    return path;
}

SegmentationRequest read_request_files(const fs::path& descriptor) {
    std::ifstream in(descriptor);
    if (!in) throw IoError(IoError::Kind::missing_file, "no such descriptor: " + descriptor.string());
    const json d = json::parse(in);
    RgbImage image = load_rgb(d.at("image").get<std::string>());
    auto load = [&](const char* key) {
        BinaryMask m = load_mask(d.at(key).get<std::string>());
        if (m.width() != image.width || m.height() != image.height) {
            throw IoError(IoError::Kind::dimension_mismatch, std::string(key) + " differs from image size");
        }
        return m;
    };
    BinaryMask pos = load("positive"), neg = load("negative"), prev = load("previous_mask");
    return assemble(std::move(image), std::move(pos), std::move(neg), std::move(prev));
}

// --- HTTP ------------------------------------------------------------------

HttpSegmenter::HttpSegmenter(std::string url, std::optional<int> input_size, int timeout_seconds)
    : url_(std::move(url)), input_size_(input_size), timeout_seconds_(timeout_seconds) {
    const auto scheme = url_.find("://");
    if (scheme == std::string::npos || url_.compare(0, scheme, "http") != 0) {
        throw std::invalid_argument("http segmenter URL must start with http://, got '" + url_ + "'");
    }
    const auto slash = url_.find('/', scheme + 3);
    origin_ = url_.substr(0, slash);
    path_ = slash == std::string::npos ? "/predict" : url_.substr(slash);
    if (path_ == "/") path_ = "/predict";
}

BinaryMask HttpSegmenter::predict(const SegmentationRequest& request) const {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    client.set_write_timeout(timeout_seconds_);
    const auto res = client.Post(path_, request_to_json(request).dump(), "application/json");
    if (!res) {
        throw std::runtime_error("http segmenter: " + httplib::to_string(res.error()) + " (" + url_ + ")");
    }
    if (res->status != 200) {
        throw std::runtime_error("http segmenter: status " + std::to_string(res->status) + ": " + res->body);
    }
    const json body = json::parse(res->body);
    BinaryMask m = decode_mask(base64_decode(body.at("mask").get<std::string>()));
    if (m.width() != request.width() || m.height() != request.height()) {
        throw std::runtime_error("http segmenter: mask size differs from the request");
    }
    return m;
}

// --- subprocess ------------------------------------------------------------

struct SubprocessSegmenter::Process {
    pid_t pid = -1;
    std::FILE* to_child = nullptr;
    std::FILE* from_child = nullptr;

    ~Process() {
        if (to_child) std::fclose(to_child);
        if (from_child) std::fclose(from_child);
        if (pid > 0) {
            int status = 0;
            if (waitpid(pid, &status, WNOHANG) == 0) {
                // Closing stdin asks the child to exit; give it a moment.
                for (int i = 0; i < 50 && waitpid(pid, &status, WNOHANG) == 0; ++i) usleep(20000);
                if (waitpid(pid, &status, WNOHANG) == 0) {
                    kill(pid, SIGTERM);
                    waitpid(pid, &status, 0);
                }
            }
        }
    }
};

SubprocessSegmenter::SubprocessSegmenter(std::string command, std::optional<int> input_size)
    : command_(std::move(command)), input_size_(input_size) {
    char tmpl[] = "/tmp/scribble-subproc-XXXXXX";
    if (mkdtemp(tmpl) == nullptr) throw std::runtime_error("cannot create a temporary directory");
    workdir_ = tmpl;
}

SubprocessSegmenter::~SubprocessSegmenter() {
    proc_.reset();
    std::error_code ec;
    fs::remove_all(workdir_, ec);
}

BinaryMask SubprocessSegmenter::predict(const SegmentationRequest& request) const {
    std::lock_guard lock(mutex_);
    if (!proc_) proc_ = spawn(command_);

    const fs::path dir = workdir_ / ("req" + std::to_string(counter_++));
    const fs::path desc = write_request_files(request, dir);
    const std::string line = desc.string() + "\n";
    if (std::fputs(line.c_str(), proc_->to_child) < 0 || std::fflush(proc_->to_child) != 0) {
        proc_.reset();
        throw std::runtime_error("subprocess segmenter: cannot write to child");
    }
    std::string reply;
    for (int c = std::fgetc(proc_->from_child); c != EOF && c != '\n'; c = std::fgetc(proc_->from_child)) {
        reply.push_back(static_cast<char>(c));
    }
    if (reply.empty()) {
        proc_.reset();
        throw std::runtime_error("subprocess segmenter: child closed its output");
    }
    if (!reply.empty() && reply.back() == '\r') reply.pop_back();
    BinaryMask m = load_mask(reply);
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (m.width() != request.width() || m.height() != request.height()) {
        throw std::runtime_error("subprocess segmenter: mask size differs from the request");
    }
    return m;
}

std::unique_ptr<SubprocessSegmenter::Process> SubprocessSegmenter::spawn(const std::string& command) {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0) throw std::runtime_error("pipe failed");
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        throw std::runtime_error("pipe failed");
    }
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    auto p = std::make_unique<SubprocessSegmenter::Process>();
    p->pid = pid;
    p->to_child = fdopen(in_pipe[1], "w");
    p->from_child = fdopen(out_pipe[0], "r");
    std::signal(SIGPIPE, SIG_IGN);
    return p;
}

// --- registry --------------------------------------------------------------

std::shared_ptr<const Segmenter> make_segmenter(const std::string& spec, const SegmenterOptions& opt) {
    if (spec == "geodesic") return std::make_shared<GeodesicSegmenter>();
    if (spec == "empty") return std::make_shared<EmptySegmenter>();
    if (spec.rfind("http://", 0) == 0) return std::make_shared<HttpSegmenter>(spec, opt.model_input_size);
    if (spec.rfind("http:", 0) == 0) {
        return std::make_shared<HttpSegmenter>(spec.substr(5), opt.model_input_size);
    }
    if (spec.rfind("subprocess:", 0) == 0) {
        return std::make_shared<SubprocessSegmenter>(spec.substr(11), opt.model_input_size);
    }
    if (spec.rfind("oracle", 0) == 0) {
        throw std::invalid_argument("the oracle segmenter needs a ground truth per sample");
    }
    throw std::invalid_argument("unknown segmenter '" + spec + "'");
}

SegmenterFactory make_segmenter_factory(const std::string& spec, const SegmenterOptions& opt) {
    if (spec == "oracle" || spec.rfind("oracle:", 0) == 0) {
        const double noise = spec == "oracle" ? 0.0 : std::stod(spec.substr(7));
        if (noise < 0) throw std::invalid_argument("oracle noise must be >= 0");
        const auto seed = opt.oracle_seed;
        return [noise, seed](const std::string& id, const BinaryMask& gt) {
            // FNV-1a keeps the per-sample seed stable across platforms.
            std::uint64_t h = 0xcbf29ce484222325ull;
            for (unsigned char c : id) h = (h ^ c) * 0x100000001b3ull;
            return std::make_shared<OracleSegmenter>(gt, noise, derive_seed(seed, h));
        };
    }
    return shared_segmenter(make_segmenter(spec, opt));
}

}  // namespace scribble
