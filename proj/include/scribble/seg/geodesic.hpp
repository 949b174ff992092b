#pragma once

#include "scribble/mask/distance.hpp"
#include "scribble/seg/segmenter.hpp"

namespace scribble {

struct GeodesicConfig {
    /// Cost per unit of raw 8-bit RGB distance. Large enough that crossing a
    /// color edge outweighs any spatial path inside the image.
    double lambda = 10.0;
    /// Prior bonus for the previous-mask label, as a fraction of the largest
    /// finite distance.
    double prior_fraction = 0.15;
};

/// Geodesic distance from `seeds` over the 8-connected grid. A step between
/// neighbors p, q costs |p − q| · (1 + λ · ‖rgb(p) − rgb(q)‖), colors in 0..255.
/// Unreachable pixels (empty seed set) are +infinity.
Raster<double> geodesic_distance(const RgbImage& image, const BinaryMask& seeds, double lambda);

/// Labels each pixel by the nearer of the positive and negative seed sets.
/// Without negative scribbles, image-border pixels outside the previous mask
/// act as negative seeds; without positive scribbles the previous mask does.
/// Scribble pixels keep their own label. No scribbles → previous mask.
BinaryMask geodesic_predict(const SegmentationRequest& request, const GeodesicConfig& cfg = {});

class GeodesicSegmenter final : public Segmenter {
public:
    explicit GeodesicSegmenter(GeodesicConfig cfg = {}) : cfg_(cfg) {}
    BinaryMask predict(const SegmentationRequest& request) const override {
        return geodesic_predict(request, cfg_);
    }
    std::string name() const override { return "geodesic"; }

private:
    GeodesicConfig cfg_;
};

}  // namespace scribble
