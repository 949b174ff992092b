#include "scribble/eval/zoom.hpp"

#include <algorithm>
#include <cmath>

#include "scribble/seg/resample.hpp"

namespace scribble {
namespace {

// Places a window of `side` pixels centered on [lo, lo + len) inside [0, extent).
std::pair<int, int> place(int lo, int len, int side, int extent) {
    if (side >= extent) return {0, extent};
    const int start = lo - (side - len) / 2;
    return {std::clamp(start, 0, extent - side), side};
}

}  // namespace

Box zoom_box(const BinaryMask& region, double ratio) {
    const auto bb = region.bounding_box();
    if (!bb) return {0, 0, region.width(), region.height()};
    const int longer = std::max(bb->width, bb->height);
    const int side = std::max(longer, static_cast<int>(std::ceil(longer * ratio - 1e-9)));
    const auto [x, w] = place(bb->x, bb->width, side, region.width());
    const auto [y, h] = place(bb->y, bb->height, side, region.height());
    return {x, y, w, h};
}

SegmentationRequest build_request(const RgbImage& image, const ScribbleMaps& scribbles,
                                  const BinaryMask& previous_mask, bool zoom, double ratio,
                                  std::optional<int> input_size) {
    Box box{0, 0, image.width, image.height};
    if (zoom) box = zoom_box(previous_mask | scribbles.positive() | scribbles.negative(), ratio);
    CropDescriptor crop{box, box.width, box.height};
    if (input_size) crop.target_width = crop.target_height = *input_size;
    return crop_request(image, scribbles, previous_mask, crop);
}

}  // namespace scribble
