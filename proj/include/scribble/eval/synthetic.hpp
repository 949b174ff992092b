#pragma once

#include <cstdint>
#include <string>

#include "scribble/eval/harness.hpp"
#include "scribble/train/rng.hpp"

namespace scribble {

struct SyntheticOptions {
    int width = 64;
    int height = 64;
    int max_ellipses = 3;
    /// Per-pixel uniform color jitter amplitude; 0 gives two flat colors.
    int color_noise = 0;
};

/// Union of 1..max_ellipses random filled ellipses kept off the image border;
/// never empty.
BinaryMask random_ellipse_mask(int width, int height, int max_ellipses, Rng& rng);

/// Two-region image: the mask in one color, the rest in a clearly different
/// one. Deterministic in (index, seed).
LoadedSample synthetic_sample(std::size_t index, std::uint64_t seed, const SyntheticOptions& opt = {});

/// In-memory dataset of `count` synthetic samples with ids "syn_0000", ...
DatasetSource synthetic_dataset(const std::string& name, std::size_t count, std::uint64_t seed,
                                const SyntheticOptions& opt = {});

}  // namespace scribble
