#include "scribble/seg/geodesic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace scribble {

Raster<double> geodesic_distance(const RgbImage& image, const BinaryMask& seeds, double lambda) {
    const int w = image.width, h = image.height;
    if (seeds.width() != w || seeds.height() != h) {
        throw std::invalid_argument("geodesic_distance: seed mask differs from image size");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    Raster<double> dist{w, h, std::vector<double>(seeds.size(), inf)};

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (seeds[i]) {
            dist.values[i] = 0.0;
            heap.emplace(0.0, i);
        }
    }
    const double scale = lambda;
    while (!heap.empty()) {
        const auto [d, i] = heap.top();
        heap.pop();
        if (d > dist.values[i]) continue;
        const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
        const auto c = image.at(x, y);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if ((dx == 0 && dy == 0) || !seeds.in_bounds(x + dx, y + dy)) continue;
                const auto n = image.at(x + dx, y + dy);
                const double dr = c[0] - n[0], dg = c[1] - n[1], db = c[2] - n[2];
                const double step = (dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0;
                const double nd = d + step * (1.0 + scale * std::sqrt(dr * dr + dg * dg + db * db));
                const std::size_t j = seeds.index(x + dx, y + dy);
                if (nd < dist.values[j]) {
                    dist.values[j] = nd;
                    heap.emplace(nd, j);
                }
            }
        }
    }
    return dist;
}

BinaryMask geodesic_predict(const SegmentationRequest& request, const GeodesicConfig& cfg) {
    request.validate();
    const BinaryMask& pos = request.scribbles.positive();
    const BinaryMask& neg = request.scribbles.negative();
    const BinaryMask& prev = request.previous_mask;
    if (request.scribbles.empty()) return prev;

    BinaryMask pos_seeds = pos.any() ? pos : prev - neg;
    BinaryMask neg_seeds = neg;
    if (neg.none()) {
        const int w = neg.width(), h = neg.height();
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const bool border = x == 0 || y == 0 || x == w - 1 || y == h - 1;
                if (border && !prev.get(x, y) && !pos.get(x, y)) neg_seeds.set(x, y);
            }
        }
    }

    const auto dp = geodesic_distance(request.image, pos_seeds, cfg.lambda);
    const auto dn = geodesic_distance(request.image, neg_seeds, cfg.lambda);

    double prior = 0.0;
    if (prev.any()) {
        double max_finite = 0.0;
        for (const auto* r : {&dp, &dn}) {
            for (double v : r->values) {
                if (std::isfinite(v)) max_finite = std::max(max_finite, v);
            }
        }
        prior = cfg.prior_fraction * max_finite;
    }

    BinaryMask out(pos.width(), pos.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool label;
        if (pos[i]) {
            label = true;
        } else if (neg[i]) {
            label = false;
        } else {
            const double cp = dp.values[i] - (prev[i] ? prior : 0.0);
            const double cn = dn.values[i] - (prev[i] ? 0.0 : prior);
            label = cp < cn || (cp == cn && prev[i]);
        }
        out.data()[i] = label ? 1 : 0;
    }
    return out;
}

}  // namespace scribble
