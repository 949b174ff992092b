#pragma once

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/image.hpp"
#include "scribble/seg/segmenter.hpp"

namespace scribble {

/// Source coordinate of destination index `i` when `len` source pixels starting
/// at `start` are resampled to `target` pixels (pixel-center mapping).
inline int nearest_source(int i, int start, int len, int target) {
    return start + static_cast<int>((2 * static_cast<long long>(i) + 1) * len / (2LL * target));
}

/// `box` of `src` resampled to target_w × target_h by nearest neighbor.
BinaryMask resample_nearest(const BinaryMask& src, const Box& box, int target_w, int target_h);

/// `box` of `src` resampled to target_w × target_h bilinearly (pixel centers
/// aligned, edges clamped). Identity scale copies exactly.
RgbImage resample_bilinear(const RgbImage& src, const Box& box, int target_w, int target_h);

/// Crops every raster of a full-frame request to `crop.box` and resamples to
/// the crop's target size.
SegmentationRequest crop_request(const RgbImage& image, const ScribbleMaps& scribbles,
                                 const BinaryMask& previous_mask, const CropDescriptor& crop);

/// Writes `pred` (target-sized) back into the crop box of a copy of `previous`
/// by nearest neighbor; pixels outside the box keep `previous`.
BinaryMask paste_back(const BinaryMask& pred, const CropDescriptor& crop, const BinaryMask& previous);

}  // namespace scribble
