#pragma once

// Independent reference implementations used as test oracles. They favor
// obviousness over speed and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "scribble/mask/binary_mask.hpp"

namespace oracle {

using scribble::BinaryMask;
using scribble::Point;

/// Brute-force nearest-false distance, squared; outside the image is false.
inline std::vector<std::int64_t> brute_squared_edt(const BinaryMask& m) {
    const int w = m.width(), h = m.height();
    std::vector<std::int64_t> out(m.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.get(x, y)) continue;
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (int v = -1; v <= h; ++v) {
                for (int u = -1; u <= w; ++u) {
                    const bool inside = u >= 0 && v >= 0 && u < w && v < h;
                    if (inside && m.get(u, v)) continue;
                    const std::int64_t dx = u - x, dy = v - y;
                    best = std::min(best, dx * dx + dy * dy);
                }
            }
            out[m.index(x, y)] = best;
        }
    }
    return out;
}

inline std::vector<Point> disk_offsets(int r) {
    std::vector<Point> out;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            if (dx * dx + dy * dy <= r * r) out.push_back({dx, dy});
        }
    }
    return out;
}

/// Erosion by definition: every disk offset must land on a true in-image pixel.
inline BinaryMask brute_erode(const BinaryMask& m, int r) {
    BinaryMask out(m.width(), m.height());
    const auto disk = disk_offsets(r);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            bool all = true;
            for (const auto& o : disk) all = all && m.get_or_false(x + o.x, y + o.y);
            out.set(x, y, all);
        }
    }
    return out;
}

inline BinaryMask brute_dilate(const BinaryMask& m, int r) {
    BinaryMask out(m.width(), m.height());
    const auto disk = disk_offsets(r);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (!m.get(x, y)) continue;
            for (const auto& o : disk) {
                if (out.in_bounds(x + o.x, y + o.y)) out.set(x + o.x, y + o.y);
            }
        }
    }
    return out;
}

/// BFS flood fill; returns per-pixel component ids (−1 background) and the
/// number of components.
inline std::pair<std::vector<int>, int> flood_fill(const BinaryMask& m, int connectivity) {
    std::vector<int> id(m.size(), -1);
    int next = 0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (!m.get(x, y) || id[m.index(x, y)] >= 0) continue;
            std::queue<Point> q;
            q.push({x, y});
            id[m.index(x, y)] = next;
            while (!q.empty()) {
                const Point p = q.front();
                q.pop();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (connectivity == 4 && dx != 0 && dy != 0) continue;
                        const int nx = p.x + dx, ny = p.y + dy;
                        if (!m.get_or_false(nx, ny) || id[m.index(nx, ny)] >= 0) continue;
                        id[m.index(nx, ny)] = next;
                        q.push({nx, ny});
                    }
                }
            }
            ++next;
        }
    }
    return {id, next};
}

inline int component_count(const BinaryMask& m, int connectivity = 8) {
    return flood_fill(m, connectivity).second;
}

/// Partition of pixels into components as a canonical set of pixel-index sets.
inline std::set<std::set<std::size_t>> partition(const std::vector<int>& labels, int background) {
    std::vector<std::set<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == background) continue;
        if (static_cast<std::size_t>(labels[i]) >= groups.size()) groups.resize(labels[i] + 1);
        groups[static_cast<std::size_t>(labels[i])].insert(i);
    }
    std::set<std::set<std::size_t>> out;
    for (auto& g : groups) {
        if (!g.empty()) out.insert(std::move(g));
    }
    return out;
}

/// Weighted undirected edge list.
struct Edge {
    int u, v;
    double w;
};

/// Floyd–Warshall all-pairs shortest path lengths (infinity when unreachable).
inline std::vector<std::vector<double>> all_pairs(int n, const std::vector<Edge>& edges) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : edges) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

/// Plain union-find.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

/// Random mask made of disks, bars, rings and speckle, possibly touching the
/// border. Uses std::mt19937 so it is independent of the library RNG.
inline BinaryMask random_blobs(std::mt19937& gen, int min_side = 8, int max_side = 48, int max_shapes = 5) {
    std::uniform_int_distribution<int> side(min_side, max_side);
    const int w = side(gen), h = side(gen);
    BinaryMask m(w, h);
    std::uniform_int_distribution<int> count(1, max_shapes), kind(0, 3);
    std::uniform_real_distribution<double> cx(-2.0, w + 2.0), cy(-2.0, h + 2.0), rad(1.0, 12.0),
        unit(0.0, 1.0);
    const int n = count(gen);
    for (int k = 0; k < n; ++k) {
        const int t = kind(gen);
        const double x0 = cx(gen), y0 = cy(gen), r = rad(gen);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double dx = x - x0, dy = y - y0, d = std::sqrt(dx * dx + dy * dy);
                bool in = false;
                switch (t) {
                    case 0: in = d <= r; break;
                    case 1: in = std::abs(dx) <= r && std::abs(dy) <= r * 0.35; break;
                    case 2: in = d <= r && d >= r * 0.55; break;
                    default: in = unit(gen) < 0.03; break;
                }
                if (in) m.set(x, y);
            }
        }
    }
    if (m.none()) m.set(w / 2, h / 2);
    return m;
}

/// Random mask of 1..max_disks disks kept away from the border.
inline BinaryMask random_disks(std::mt19937& gen, int w, int h, int max_disks = 3) {
    BinaryMask m(w, h);
    std::uniform_int_distribution<int> count(1, max_disks);
    const int n = count(gen);
    for (int k = 0; k < n; ++k) {
        std::uniform_real_distribution<double> rr(2.0, std::min(w, h) / 4.0);
        const double r = rr(gen);
        std::uniform_real_distribution<double> cx(r + 1, w - r - 2), cy(r + 1, h - r - 2);
        const double x0 = cx(gen), y0 = cy(gen);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if ((x - x0) * (x - x0) + (y - y0) * (y - y0) <= r * r) m.set(x, y);
            }
        }
    }
    return m;
}

inline BinaryMask rect(int w, int h, int x0, int y0, int rw, int rh) {
    BinaryMask m(w, h);
    for (int y = y0; y < y0 + rh; ++y) {
        for (int x = x0; x < x0 + rw; ++x) {
            if (m.in_bounds(x, y)) m.set(x, y);
        }
    }
    return m;
}

inline std::size_t count_and(const BinaryMask& a, const BinaryMask& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] && b[i]) ? 1 : 0;
    return n;
}

}  // namespace oracle
