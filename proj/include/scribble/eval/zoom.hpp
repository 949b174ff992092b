#pragma once

#include <optional>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/seg/segmenter.hpp"

namespace scribble {

/// Bounding box of `region` squared to its longer side, expanded by `ratio`
/// about its center and shifted / clamped into the width × height frame.
/// Empty region → the full frame.
Box zoom_box(const BinaryMask& region, double ratio);

/// Request for one round. With `zoom` set, the crop is the zoom box of
/// prev ∪ positive ∪ negative; otherwise the full frame. The crop is resized to
/// input_size × input_size when the segmenter has a fixed input size and kept
/// at native resolution otherwise.
SegmentationRequest build_request(const RgbImage& image, const ScribbleMaps& scribbles,
                                  const BinaryMask& previous_mask, bool zoom, double ratio,
                                  std::optional<int> input_size);

}  // namespace scribble
