#include "scribble/mask/distance.hpp"

#include <cmath>
#include <limits>

namespace scribble {
namespace {

constexpr std::int64_t kFar = std::int64_t{1} << 50;

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher), one row or column.
void envelope_1d(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& d,
                 std::vector<int>& v, std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s = 0.0;
        for (;;) {
            const int p = v[k];
            s = (static_cast<double>(f[q] + std::int64_t{q} * q) -
                 static_cast<double>(f[p] + std::int64_t{p} * p)) /
                (2.0 * (q - p));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const std::int64_t dq = q - v[k];
        d[q] = std::min(kFar, dq * dq + f[v[k]]);
    }
}

// Squared distance to the nearest seed on a width×height grid.
std::vector<std::int64_t> edt_to_seeds(const std::vector<std::uint8_t>& is_seed, int width,
                                       int height) {
    std::vector<std::int64_t> g(is_seed.size());
    for (std::size_t i = 0; i < is_seed.size(); ++i) g[i] = is_seed[i] ? 0 : kFar;

    const int n = std::max(width, height);
    std::vector<std::int64_t> f(n), d(n);
    std::vector<int> v(n);
    std::vector<double> z(n + 1);

    f.resize(height);
    d.resize(height);
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y) f[y] = g[static_cast<std::size_t>(y) * width + x];
        envelope_1d(f, d, v, z);
        for (int y = 0; y < height; ++y) g[static_cast<std::size_t>(y) * width + x] = d[y];
    }
    f.resize(width);
    d.resize(width);
    for (int y = 0; y < height; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) f[x] = g[row + x];
        envelope_1d(f, d, v, z);
        for (int x = 0; x < width; ++x) g[row + x] = d[x];
    }
    return g;
}

}  // namespace

Raster<std::int64_t> squared_distance_transform(const BinaryMask& m) {
    const int pw = m.width() + 2;
    const int ph = m.height() + 2;
    std::vector<std::uint8_t> seeds(static_cast<std::size_t>(pw) * ph, 1);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            seeds[static_cast<std::size_t>(y + 1) * pw + (x + 1)] = m.get(x, y) ? 0 : 1;
        }
    }
    const auto padded = edt_to_seeds(seeds, pw, ph);
    Raster<std::int64_t> out{m.width(), m.height(), {}};
    out.values.resize(m.size());
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            out.values[m.index(x, y)] = padded[static_cast<std::size_t>(y + 1) * pw + (x + 1)];
        }
    }
    return out;
}

Raster<double> distance_transform(const BinaryMask& m) {
    const auto sq = squared_distance_transform(m);
    Raster<double> out{sq.width, sq.height, {}};
    out.values.resize(sq.values.size());
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        out.values[i] = std::sqrt(static_cast<double>(sq.values[i]));
    }
    return out;
}

Raster<std::int64_t> squared_distance_to(const BinaryMask& seeds) {
    std::vector<std::uint8_t> s(seeds.data().begin(), seeds.data().end());
    return {seeds.width(), seeds.height(), edt_to_seeds(s, seeds.width(), seeds.height())};
}

}  // namespace scribble
