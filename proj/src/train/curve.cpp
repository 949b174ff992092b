#include "scribble/train/curve.hpp"

#include <algorithm>
#include <cmath>

namespace scribble {
namespace {

Vec2 bezier_at(const std::array<Vec2, 4>& c, double t) {
    const double u = 1.0 - t;
    const double b0 = u * u * u;
    const double b1 = 3.0 * u * u * t;
    const double b2 = 3.0 * u * t * t;
    const double b3 = t * t * t;
    return {b0 * c[0].x + b1 * c[1].x + b2 * c[2].x + b3 * c[3].x,
            b0 * c[0].y + b1 * c[1].y + b2 * c[2].y + b3 * c[3].y};
}

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

std::vector<Vec2> sample_cubic_bezier(const std::array<Vec2, 4>& control, double max_step) {
    // The control polygon bounds the arc length.
    const double hull = dist(control[0], control[1]) + dist(control[1], control[2]) +
                        dist(control[2], control[3]);
    const int n = std::max(1, static_cast<int>(std::ceil(hull / max_step)));
    std::vector<Vec2> out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) out.push_back(bezier_at(control, static_cast<double>(i) / n));
    return out;
}

std::vector<Vec2> sample_catmull_rom(std::span<const Vec2> controls, double max_step) {
    std::vector<Vec2> out;
    if (controls.empty()) return out;
    if (controls.size() == 1) return {controls[0]};
    const std::size_t n = controls.size();
    auto at = [&](std::ptrdiff_t i) {
        return controls[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, n - 1))];
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i);
        const Vec2 p0 = at(k - 1), p1 = at(k), p2 = at(k + 1), p3 = at(k + 2);
        const std::array<Vec2, 4> bez = {
            p1,
            Vec2{p1.x + (p2.x - p0.x) / 6.0, p1.y + (p2.y - p0.y) / 6.0},
            Vec2{p2.x - (p3.x - p1.x) / 6.0, p2.y - (p3.y - p1.y) / 6.0},
            p2,
        };
        auto seg = sample_cubic_bezier(bez, max_step);
        out.insert(out.end(), seg.begin() + (i == 0 ? 0 : 1), seg.end());
    }
    return out;
}

std::vector<Point> to_pixel_path(std::span<const Vec2> samples) {
    std::vector<Point> out;
    for (const auto& s : samples) {
        const Point p{static_cast<int>(std::lround(s.x)), static_cast<int>(std::lround(s.y))};
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

std::vector<Point> subsample_evenly(std::span<const Point> path, std::size_t max_points) {
    if (path.size() <= max_points || max_points < 2) {
        return {path.begin(), path.end()};
    }
    std::vector<Point> out;
    const std::size_t last = path.size() - 1;
    for (std::size_t i = 0; i < max_points; ++i) {
        // Integer arithmetic keeps the selection platform independent.
        out.push_back(path[(i * last + (max_points - 1) / 2) / (max_points - 1)]);
    }
    out.front() = path.front();
    out.back() = path.back();
    return out;
}

}  // namespace scribble
