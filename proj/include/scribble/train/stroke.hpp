#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

enum class Polarity { positive, negative };

/// Wire names "pos" / "neg".
std::string_view to_string(Polarity p);
Polarity parse_polarity(std::string_view s);

/// One scribble in vector form: an ordered pixel polyline drawn with a round
/// brush of diameter `thickness`. Consecutive points need not be adjacent.
struct Stroke {
    std::vector<Point> points;
    int thickness = 3;
    Polarity polarity = Polarity::positive;

    friend bool operator==(const Stroke&, const Stroke&) = default;
};

/// Paints the polyline onto `canvas`, interpolating between points and
/// clipping to the canvas bounds.
void paint_polyline(BinaryMask& canvas, std::span<const Point> points, int thickness);

BinaryMask rasterize(const Stroke& stroke, int width, int height);

/// Offsets covered by a round brush of the given diameter centered on a pixel.
std::vector<Point> brush_offsets(int thickness);

}  // namespace scribble
