#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/distance.hpp"

namespace scribble {

enum class Connectivity { four = 4, eight = 8 };

enum class ErrorKind { false_positive, false_negative };

/// Connected-component labeling. Label 0 is background; regions are numbered
/// 1..K in raster order of their top-left-most pixel.
struct LabeledRegions {
    Raster<int> labels;
    std::vector<std::size_t> sizes;           // sizes[k - 1] for label k
    std::vector<Point> first_pixel;           // raster-first pixel of each region
    std::vector<ErrorKind> polarity;          // empty unless built from an error mask

    std::size_t count() const { return sizes.size(); }
    int label_at(int x, int y) const { return labels.at(x, y); }
    /// Label of the largest region (ties → raster-first top-left pixel); 0 if none.
    int largest() const;
    BinaryMask region(int label) const;
};

LabeledRegions connected_components(const BinaryMask& m,
                                     Connectivity connectivity = Connectivity::eight);

/// The single largest region, or nullopt for an empty mask.
std::optional<BinaryMask> largest_component(const BinaryMask& m,
                                            Connectivity connectivity = Connectivity::eight);

/// Labels false-negative (gt \ pred) and false-positive (pred \ gt) regions
/// separately, then numbers them jointly in raster order of their first pixel.
LabeledRegions label_error_regions(const BinaryMask& gt, const BinaryMask& pred,
                                   Connectivity connectivity = Connectivity::eight);

}  // namespace scribble
