#pragma once

#include <optional>
#include <string>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/image.hpp"
#include "scribble/train/scribble_maps.hpp"

namespace scribble {

/// Where a request sits in the full-resolution frame: `box` is the crop in
/// full-frame pixels and the request rasters are `box` resampled to
/// target_width × target_height.
struct CropDescriptor {
    Box box;
    int target_width = 0;
    int target_height = 0;

    bool is_identity_scale() const {
        return box.width == target_width && box.height == target_height;
    }
};

struct SegmentationRequest {
    RgbImage image;
    ScribbleMaps scribbles;
    BinaryMask previous_mask;
    CropDescriptor crop;

    int width() const { return image.width; }
    int height() const { return image.height; }
    /// Throws when any raster disagrees with the image size.
    void validate() const;
};

/// A full-frame request (identity crop) over the given rasters.
SegmentationRequest make_request(RgbImage image, ScribbleMaps scribbles, BinaryMask previous_mask);

/// Anything that maps a request to a binary mask of the request's size.
/// Implementations must be deterministic and hold no per-request mutable
/// state, so one instance may serve concurrent callers.
class Segmenter {
public:
    virtual ~Segmenter() = default;
    virtual BinaryMask predict(const SegmentationRequest& request) const = 0;
    virtual std::string name() const = 0;
    /// Square input side the model expects; nullopt for segmenters that run at
    /// any resolution (requests are then cropped but not resized).
    virtual std::optional<int> input_size() const { return std::nullopt; }
};

}  // namespace scribble
