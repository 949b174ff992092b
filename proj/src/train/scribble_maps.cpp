#include "scribble/train/scribble_maps.hpp"

namespace scribble {

void ScribbleMaps::add(const BinaryMask& raster, Polarity polarity) {
    if (polarity == Polarity::positive) {
        positive_ |= raster;
        negative_ -= raster;
    } else {
        negative_ |= raster;
        positive_ -= raster;
    }
}

}  // namespace scribble
