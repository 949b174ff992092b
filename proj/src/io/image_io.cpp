#include "scribble/io/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <sodium.h>

namespace scribble {
namespace {

namespace fs = std::filesystem;

void require_file(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw IoError(IoError::Kind::missing_file, "no such file: " + path.string());
    }
}

RgbImage from_mat(const cv::Mat& raw, const std::string& what) {
    if (raw.empty()) throw IoError(IoError::Kind::decode_failed, "cannot decode image: " + what);
    cv::Mat m = raw;
    if (m.depth() != CV_8U) m.convertTo(m, CV_8U, m.depth() == CV_16U ? 1.0 / 257.0 : 1.0);
    RgbImage out(m.cols, m.rows);
    for (int y = 0; y < m.rows; ++y) {
        const auto* row = m.ptr<std::uint8_t>(y);
        const int ch = m.channels();
        for (int x = 0; x < m.cols; ++x) {
            const auto* px = row + static_cast<std::ptrdiff_t>(x) * ch;
            if (ch == 1) {
                out.set(x, y, {px[0], px[0], px[0]});
            } else if (ch == 2) {  // gray + alpha
                out.set(x, y, {px[0], px[0], px[0]});
            } else {
                out.set(x, y, {px[2], px[1], px[0]});  // BGR(A) → RGB
            }
        }
    }
    return out;
}

BinaryMask mask_from_mat(const cv::Mat& raw, const std::string& what) {
    if (raw.empty()) throw IoError(IoError::Kind::decode_failed, "cannot decode mask: " + what);
    cv::Mat m = raw;
    if (m.depth() != CV_8U) m.convertTo(m, CV_8U, m.depth() == CV_16U ? 1.0 / 257.0 : 1.0);
    BinaryMask out(m.cols, m.rows);
    const int ch = m.channels();
    for (int y = 0; y < m.rows; ++y) {
        const auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < m.cols; ++x) {
            const auto* px = row + static_cast<std::ptrdiff_t>(x) * ch;
            int v = px[0];
            if (ch >= 3) v = (299 * px[2] + 587 * px[1] + 114 * px[0] + 500) / 1000;
            out.set(x, y, v >= 128);
        }
    }
    return out;
}

cv::Mat to_mat(const BinaryMask& mask) {
    cv::Mat m(mask.height(), mask.width(), CV_8UC1);
    for (int y = 0; y < mask.height(); ++y) {
        auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width(); ++x) row[x] = mask.get(x, y) ? 255 : 0;
    }
    return m;
}

cv::Mat to_mat(const RgbImage& image) {
    cv::Mat m(image.height, image.width, CV_8UC3);
    for (int y = 0; y < image.height; ++y) {
        auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < image.width; ++x) {
            const auto px = image.at(x, y);
            row[3 * x] = px[2];
            row[3 * x + 1] = px[1];
            row[3 * x + 2] = px[0];
        }
    }
    return m;
}

std::vector<std::uint8_t> encode(const cv::Mat& m) {
    std::vector<std::uint8_t> buf;
    if (!cv::imencode(".png", m, buf)) throw IoError(IoError::Kind::write_failed, "PNG encoding failed");
    return buf;
}

void write(const cv::Mat& m, const fs::path& path) {
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), m);
    } catch (const cv::Exception& e) {
        throw IoError(IoError::Kind::write_failed, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok) throw IoError(IoError::Kind::write_failed, "cannot write " + path.string());
}

cv::Mat decode_bytes(const std::vector<std::uint8_t>& bytes, int flags) {
    if (bytes.empty()) return {};
    try {
        return cv::imdecode(bytes, flags);
    } catch (const cv::Exception&) {
        return {};
    }
}

}  // namespace

std::string_view to_string(IoError::Kind kind) {
    switch (kind) {
        case IoError::Kind::missing_file: return "missing_file";
        case IoError::Kind::decode_failed: return "decode_failed";
        case IoError::Kind::dimension_mismatch: return "dimension_mismatch";
        case IoError::Kind::write_failed: return "write_failed";
    }
    return "?";
}

RgbImage load_rgb(const fs::path& path) {
    require_file(path);
    return from_mat(cv::imread(path.string(), cv::IMREAD_UNCHANGED), path.string());
}

void save_rgb(const RgbImage& image, const fs::path& path) { write(to_mat(image), path); }

BinaryMask load_mask(const fs::path& path) {
    require_file(path);
    return mask_from_mat(cv::imread(path.string(), cv::IMREAD_UNCHANGED), path.string());
}

void save_mask(const BinaryMask& mask, const fs::path& path) { write(to_mat(mask), path); }

std::vector<std::uint8_t> encode_png(const BinaryMask& mask) { return encode(to_mat(mask)); }
std::vector<std::uint8_t> encode_png(const RgbImage& image) { return encode(to_mat(image)); }

BinaryMask decode_mask(const std::vector<std::uint8_t>& bytes) {
    return mask_from_mat(decode_bytes(bytes, cv::IMREAD_UNCHANGED), "in-memory bytes");
}

RgbImage decode_rgb(const std::vector<std::uint8_t>& bytes) {
    return from_mat(decode_bytes(bytes, cv::IMREAD_UNCHANGED), "in-memory bytes");
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    const auto variant = sodium_base64_VARIANT_ORIGINAL;
    std::string out(sodium_base64_encoded_len(bytes.size(), variant), '\0');
    sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
    out.resize(out.size() - 1);  // trailing NUL
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    if (text.rfind("data:", 0) == 0) {
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) {
            throw IoError(IoError::Kind::decode_failed, "malformed data URL");
        }
        text.remove_prefix(comma + 1);
    }
    std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
    std::size_t len = 0;
    if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), " \t\r\n", &len, nullptr,
                          sodium_base64_VARIANT_ORIGINAL) != 0) {
        throw IoError(IoError::Kind::decode_failed, "invalid base64 payload");
    }
    out.resize(len);
    return out;
}

}  // namespace scribble
