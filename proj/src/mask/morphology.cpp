#include "scribble/mask/morphology.hpp"

#include <stdexcept>

#include "scribble/mask/distance.hpp"

namespace scribble {

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 0) throw std::invalid_argument("structuring element radius must be >= 0");
    return {Shape::disk, radius};
}

// Both operations threshold an exact squared EDT, which makes the cost
// independent of the radius.

BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
    if (se.radius == 0 || m.none()) return m;
    const auto d2 = squared_distance_to(m);
    const std::int64_t r2 = std::int64_t{se.radius} * se.radius;
    BinaryMask out(m.width(), m.height());
    auto bits = out.data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = d2.values[i] <= r2 ? 1 : 0;
    return out;
}

BinaryMask erode(const BinaryMask& m, const StructuringElement& se) {
    if (se.radius == 0) return m;
    const auto d2 = squared_distance_transform(m);
    const std::int64_t r2 = std::int64_t{se.radius} * se.radius;
    BinaryMask out(m.width(), m.height());
    auto bits = out.data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = d2.values[i] > r2 ? 1 : 0;
    return out;
}

}  // namespace scribble
