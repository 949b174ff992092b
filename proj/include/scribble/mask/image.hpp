#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scribble {

/// 8-bit RGB raster, interleaved, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    RgbImage() = default;
    RgbImage(int w, int h, std::array<std::uint8_t, 3> fill = {0, 0, 0}) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be positive");
        data.resize(static_cast<std::size_t>(w) * h * 3);
        for (std::size_t i = 0; i < data.size(); i += 3) {
            data[i] = fill[0];
            data[i + 1] = fill[1];
            data[i + 2] = fill[2];
        }
    }

    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)) * 3;
    }
    std::array<std::uint8_t, 3> at(int x, int y) const {
        const auto o = offset(x, y);
        return {data[o], data[o + 1], data[o + 2]};
    }
    void set(int x, int y, std::array<std::uint8_t, 3> rgb) {
        const auto o = offset(x, y);
        data[o] = rgb[0];
        data[o + 1] = rgb[1];
        data[o + 2] = rgb[2];
    }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

}  // namespace scribble
