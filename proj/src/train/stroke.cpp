#include "scribble/train/stroke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace scribble {

std::string_view to_string(Polarity p) { return p == Polarity::positive ? "pos" : "neg"; }

Polarity parse_polarity(std::string_view s) {
    if (s == "pos" || s == "positive") return Polarity::positive;
    if (s == "neg" || s == "negative") return Polarity::negative;
    throw std::invalid_argument("unknown polarity '" + std::string(s) + "'");
}

std::vector<Point> brush_offsets(int thickness) {
    if (thickness < 1) throw std::invalid_argument("stroke thickness must be >= 1");
    const double r = thickness / 2.0;
    const int reach = static_cast<int>(std::floor(r));
    std::vector<Point> out;
    for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            if (dx * dx + dy * dy <= r * r) out.push_back({dx, dy});
        }
    }
    return out;
}

void paint_polyline(BinaryMask& canvas, std::span<const Point> points, int thickness) {
    if (points.empty()) return;
    const auto brush = brush_offsets(thickness);
    auto stamp = [&](int cx, int cy) {
        for (const auto& o : brush) {
            if (canvas.in_bounds(cx + o.x, cy + o.y)) canvas.set(cx + o.x, cy + o.y);
        }
    };
    stamp(points[0].x, points[0].y);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Point a = points[i - 1];
        const Point b = points[i];
        const int steps = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
        for (int s = 1; s <= steps; ++s) {
            const double t = static_cast<double>(s) / steps;
            stamp(static_cast<int>(std::lround(a.x + t * (b.x - a.x))),
                  static_cast<int>(std::lround(a.y + t * (b.y - a.y))));
        }
    }
}

BinaryMask rasterize(const Stroke& stroke, int width, int height) {
    BinaryMask out(width, height);
    paint_polyline(out, stroke.points, stroke.thickness);
    return out;
}

}  // namespace scribble
