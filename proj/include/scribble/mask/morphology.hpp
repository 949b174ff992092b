#pragma once

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

/// Disk of integer offsets with Euclidean length ≤ radius. Radius 0 is the
/// single origin pixel, i.e. the identity element.
struct StructuringElement {
    enum class Shape { disk };

    Shape shape = Shape::disk;
    int radius = 0;

    static StructuringElement disk(int radius);
};

/// Minkowski dilation. Output is clamped to the image bounds.
BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);

/// Minkowski erosion. Pixels outside the image are false, so the result
/// shrinks away from the image border.
BinaryMask erode(const BinaryMask& m, const StructuringElement& se);

inline BinaryMask dilate(const BinaryMask& m, int radius) {
    return dilate(m, StructuringElement::disk(radius));
}
inline BinaryMask erode(const BinaryMask& m, int radius) {
    return erode(m, StructuringElement::disk(radius));
}

}  // namespace scribble
