#include "scribble/eval/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace scribble {

BinaryMask random_ellipse_mask(int width, int height, int max_ellipses, Rng& rng) {
    BinaryMask m(width, height);
    const int n = rng.uniform_int(1, std::max(1, max_ellipses));
    const double rmax = std::max(2.0, std::min(width, height) / 4.0);
    for (int k = 0; k < n || m.none(); ++k) {
        const double cx = rng.uniform(width * 0.2, width * 0.8);
        const double cy = rng.uniform(height * 0.2, height * 0.8);
        // Keep a 2-pixel margin to the frame.
        const double rx = std::min(rng.uniform(1.5, rmax), std::min(cx, width - 1 - cx) - 2.0);
        const double ry = std::min(rng.uniform(1.5, rmax), std::min(cy, height - 1 - cy) - 2.0);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const double u = (x - cx) / rx, v = (y - cy) / ry;
                if (u * u + v * v <= 1.0) m.set(x, y);
            }
        }
    }
    return m;
}

LoadedSample synthetic_sample(std::size_t index, std::uint64_t seed, const SyntheticOptions& opt) {
    Rng rng(derive_seed(seed, index));
    BinaryMask gt = random_ellipse_mask(opt.width, opt.height, opt.max_ellipses, rng);

    // Colors at least 96 apart on one channel.
    std::array<std::uint8_t, 3> fg{}, bg{};
    for (int c = 0; c < 3; ++c) {
        fg[c] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
        bg[c] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    }
    const int ch = rng.uniform_int(0, 2);
    if (std::abs(fg[ch] - bg[ch]) < 96) bg[ch] = static_cast<std::uint8_t>(fg[ch] >= 128 ? fg[ch] - 128 : fg[ch] + 128);

    RgbImage image(opt.width, opt.height);
    for (int y = 0; y < opt.height; ++y) {
        for (int x = 0; x < opt.width; ++x) {
            auto px = gt.get(x, y) ? fg : bg;
            if (opt.color_noise > 0) {
                for (auto& v : px) {
                    v = static_cast<std::uint8_t>(
                        std::clamp(v + rng.uniform_int(-opt.color_noise, opt.color_noise), 0, 255));
                }
            }
            image.set(x, y, px);
        }
    }
    return {std::move(image), std::move(gt)};
}

DatasetSource synthetic_dataset(const std::string& name, std::size_t count, std::uint64_t seed,
                                const SyntheticOptions& opt) {
    DatasetSource ds;
    ds.name = name;
    for (std::size_t i = 0; i < count; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "syn_%04zu", i);
        ds.ids.emplace_back(id);
    }
    ds.load = [seed, opt](std::size_t i) { return synthetic_sample(i, seed, opt); };
    return ds;
}

}  // namespace scribble
