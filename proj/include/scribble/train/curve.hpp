#pragma once

#include <array>
#include <span>
#include <vector>

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Samples a cubic Bezier so that consecutive samples are at most `max_step`
/// apart. Includes both end points.
std::vector<Vec2> sample_cubic_bezier(const std::array<Vec2, 4>& control, double max_step = 0.5);

/// Smooth curve through every control point: each span between consecutive
/// points is the cubic Bezier equivalent of a uniform Catmull-Rom segment.
/// End points are duplicated, so two controls give a straight segment.
std::vector<Vec2> sample_catmull_rom(std::span<const Vec2> controls, double max_step = 0.5);

/// Rounds samples to pixels, dropping consecutive duplicates.
std::vector<Point> to_pixel_path(std::span<const Vec2> samples);

/// At most `max_points` entries of `path`, evenly spaced by index, always
/// keeping the first and last.
std::vector<Point> subsample_evenly(std::span<const Point> path, std::size_t max_points);

}  // namespace scribble
