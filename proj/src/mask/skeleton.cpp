#include "scribble/mask/skeleton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "scribble/mask/components.hpp"
#include "scribble/mask/distance.hpp"

namespace scribble {
namespace {

// Ridge tolerance as a fraction of the neighbor step, and the minimum anchor
// depth: absolute (pixels) and relative to the component's deepest pixel.
constexpr double kRidgeSlack = 0.7;
constexpr double kMinAnchorDepth = 2.0;
constexpr double kRelAnchorDepth = 0.35;

// Neighbor order E, NE, N, NW, W, SW, S, SE.
constexpr std::array<int, 8> kDx = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy = {0, -1, -1, -1, 0, 1, 1, 1};

unsigned neighborhood(const BinaryMask& m, int x, int y) {
    unsigned code = 0;
    for (int k = 0; k < 8; ++k) {
        if (m.get_or_false(x + kDx[k], y + kDy[k])) code |= 1u << k;
    }
    return code;
}

// Yokoi connectivity number for 8-connected foreground; a pixel is simple iff it is 1.
constexpr std::array<bool, 256> make_simple_table() {
    std::array<bool, 256> table{};
    for (unsigned code = 0; code < 256; ++code) {
        int n = 0;
        for (int k = 0; k < 8; k += 2) {
            const int a = 1 - static_cast<int>((code >> k) & 1u);
            const int b = 1 - static_cast<int>((code >> ((k + 1) % 8)) & 1u);
            const int c = 1 - static_cast<int>((code >> ((k + 2) % 8)) & 1u);
            n += a - a * b * c;
        }
        table[code] = n == 1;
    }
    return table;
}

constexpr auto kSimple = make_simple_table();

int popcount8(unsigned code) {
    int n = 0;
    for (; code != 0; code &= code - 1) ++n;
    return n;
}

struct Candidate {
    std::int64_t d2;
    int x;
    int y;
};

// Ridge test on the distance map: no neighbor is farther from the background by
// a sizeable fraction of the step between them.
bool on_ridge(const Raster<double>& dist, int x, int y) {
    const double here = dist.at(x, y);
    for (int k = 0; k < 8; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (nx < 0 || ny < 0 || nx >= dist.width || ny >= dist.height) continue;
        const double step = (k % 2 == 0) ? 1.0 : std::sqrt(2.0);
        if (dist.at(nx, ny) - here >= kRidgeSlack * step) return false;
    }
    return true;
}

// Anchors are ridge pixels deep enough relative to their component's thickness;
// shallow ridge pixels come from boundary jitter and would grow spurs.
std::vector<std::uint8_t> find_anchors(const BinaryMask& m, const Raster<double>& dist) {
    const auto regions = connected_components(m, Connectivity::eight);
    std::vector<double> deepest(regions.count() + 1, 0.0);
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
        const int label = regions.labels.values[i];
        deepest[label] = std::max(deepest[label], dist.values[i]);
    }
    std::vector<std::uint8_t> anchor(m.size(), 0);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (!m.get(x, y)) continue;
            const double top = deepest[regions.label_at(x, y)];
            const double depth_floor = std::max(std::min(kMinAnchorDepth, top), kRelAnchorDepth * top);
            anchor[m.index(x, y)] = dist.at(x, y) >= depth_floor - 1e-9 && on_ridge(dist, x, y);
        }
    }
    return anchor;
}

BinaryMask remove_simple_pixels(BinaryMask out, const std::vector<Candidate>& order,
                                const std::vector<std::uint8_t>* keep) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : order) {
            if (!out.get(c.x, c.y)) continue;
            const unsigned code = neighborhood(out, c.x, c.y);
            if (!kSimple[code]) continue;
            if (keep != nullptr ? (*keep)[out.index(c.x, c.y)] != 0 : popcount8(code) == 1) {
                continue;
            }
            out.set(c.x, c.y, false);
            changed = true;
        }
    }
    return out;
}

}  // namespace

bool is_simple_pixel(const BinaryMask& m, int x, int y) {
    return kSimple[neighborhood(m, x, y)];
}

BinaryMask medial_axis(const BinaryMask& m) {
    if (m.none()) throw std::invalid_argument("medial_axis: empty mask");
    const auto d2 = squared_distance_transform(m);
    Raster<double> dist{d2.width, d2.height, std::vector<double>(d2.values.size())};
    for (std::size_t i = 0; i < d2.values.size(); ++i) {
        dist.values[i] = std::sqrt(static_cast<double>(d2.values[i]));
    }

    std::vector<Candidate> order;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (m.get(x, y)) order.push_back({d2.at(x, y), x, y});
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Candidate& a, const Candidate& b) { return a.d2 < b.d2; });

    // Peel from the boundary inward, never touching anchors; then thin the
    // remaining ridge band to single-pixel width keeping end pixels.
    const auto anchors = find_anchors(m, dist);
    const BinaryMask band = remove_simple_pixels(m, order, &anchors);
    return remove_simple_pixels(band, order, nullptr);
}

BinaryMask thin(const BinaryMask& m) {
    std::vector<Candidate> order;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (m.get(x, y)) order.push_back({0, x, y});
        }
    }
    return remove_simple_pixels(m, order, nullptr);
}

}  // namespace scribble
