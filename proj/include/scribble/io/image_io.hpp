#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/image.hpp"

namespace scribble {

class IoError : public std::runtime_error {
public:
    enum class Kind { missing_file, decode_failed, dimension_mismatch, write_failed };

    IoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string_view to_string(IoError::Kind kind);

/// Any format OpenCV decodes; grayscale is promoted by channel replication and
/// alpha is dropped.
RgbImage load_rgb(const std::filesystem::path& path);
void save_rgb(const RgbImage& image, const std::filesystem::path& path);

/// 8-bit single-channel convention: ≥ 128 is true. Color files are converted to
/// gray first.
BinaryMask load_mask(const std::filesystem::path& path);
/// Writes 0 / 255 PNG.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const BinaryMask& mask);
std::vector<std::uint8_t> encode_png(const RgbImage& image);
BinaryMask decode_mask(const std::vector<std::uint8_t>& bytes);
RgbImage decode_rgb(const std::vector<std::uint8_t>& bytes);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
/// Throws IoError(decode_failed) on malformed input. Accepts an optional
/// "data:...;base64," prefix.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace scribble
