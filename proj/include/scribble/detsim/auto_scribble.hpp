#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/components.hpp"
#include "scribble/train/stroke.hpp"

namespace scribble {

struct AutoScribbleConfig {
    int thickness = 3;
    double graph_radius = 1.5;
    std::size_t max_control_points = 8;
    /// Skeletonize every error region sharing the largest region's polarity
    /// instead of the largest region alone.
    bool whole_error_mask = false;
    Connectivity connectivity = Connectivity::eight;
};

/// One corrective scribble produced by the deterministic simulator.
struct EvalScribble {
    Stroke stroke;              // fitted curve as a pixel polyline
    Polarity polarity = Polarity::positive;
    BinaryMask source_region;   // error region the stroke was drawn on
    BinaryMask raster;          // rasterized stroke clipped to source_region
};

/// Smooth stroke through at most `max_control_points` evenly spaced points of
/// `path`. A two-point path yields a straight segment.
Stroke fit_eval_stroke(std::span<const Point> path, int thickness,
                       std::size_t max_control_points = 8);

/// Fits, rasterizes with a round brush and intersects with `clip`.
BinaryMask rasterize_eval_stroke(std::span<const Point> path, int thickness,
                                 const BinaryMask& clip, std::size_t max_control_points = 8);

/// Next scribble for the round: largest error region → medial axis → radius
/// graph → spanning forest → longest path → smooth stroke. Returns nullopt
/// when `pred` already equals `gt`. Positive for a false-negative region,
/// negative for a false-positive one. Deterministic.
std::optional<EvalScribble> simulate_interaction(const BinaryMask& gt, const BinaryMask& pred,
                                                 const AutoScribbleConfig& cfg = {});

}  // namespace scribble
