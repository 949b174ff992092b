#pragma once

#include "scribble/mask/binary_mask.hpp"
#include "scribble/train/stroke.hpp"

namespace scribble {

/// Accumulated positive and negative scribble rasters. The two maps never
/// overlap: adding a raster evicts its pixels from the opposite map.
class ScribbleMaps {
public:
    ScribbleMaps(int width, int height) : positive_(width, height), negative_(width, height) {}

    const BinaryMask& positive() const { return positive_; }
    const BinaryMask& negative() const { return negative_; }
    const BinaryMask& of(Polarity p) const {
        return p == Polarity::positive ? positive_ : negative_;
    }
    int width() const { return positive_.width(); }
    int height() const { return positive_.height(); }
    bool empty() const { return positive_.none() && negative_.none(); }

    /// Latest raster wins where polarities overlap.
    void add(const BinaryMask& raster, Polarity polarity);

    friend bool operator==(const ScribbleMaps&, const ScribbleMaps&) = default;

private:
    BinaryMask positive_;
    BinaryMask negative_;
};

}  // namespace scribble
