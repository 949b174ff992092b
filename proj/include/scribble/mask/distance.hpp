#pragma once

#include <cstdint>
#include <vector>

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

/// Row-major raster of per-pixel values.
template <typename T>
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<T> values;

    T at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
};

/// Exact squared Euclidean distance from each pixel to the nearest false pixel.
/// Pixels outside the image count as false, so a true pixel on the border has
/// distance 1. False pixels are 0.
Raster<std::int64_t> squared_distance_transform(const BinaryMask& m);

/// Square root of `squared_distance_transform`.
Raster<double> distance_transform(const BinaryMask& m);

/// Exact squared distance from each pixel to the nearest true pixel of `seeds`
/// (no outside-image seeds). Pixels of an empty seed mask get a huge sentinel.
Raster<std::int64_t> squared_distance_to(const BinaryMask& seeds);

}  // namespace scribble
