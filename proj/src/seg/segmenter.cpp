#include "scribble/seg/segmenter.hpp"

#include <stdexcept>
#include <utility>

namespace scribble {

void SegmentationRequest::validate() const {
    const int w = image.width;
    const int h = image.height;
    if (scribbles.width() != w || scribbles.height() != h || previous_mask.width() != w ||
        previous_mask.height() != h) {
        throw std::invalid_argument("segmentation request rasters differ in size");
    }
}

SegmentationRequest make_request(RgbImage image, ScribbleMaps scribbles, BinaryMask previous_mask) {
    const int w = image.width;
    const int h = image.height;
    SegmentationRequest req{std::move(image), std::move(scribbles), std::move(previous_mask),
                            CropDescriptor{Box{0, 0, w, h}, w, h}};
    req.validate();
    return req;
}

}  // namespace scribble
