#pragma once

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

/// Topological skeleton by distance-ordered homotopic thinning.
///
/// Simple pixels (8-connected foreground, 4-connected background) are peeled
/// in order of increasing distance to the background while ridge pixels of the
/// distance map are held fixed; the remaining ridge band is then thinned to
/// unit width keeping end pixels. Ridge pixels shallower than the component's
/// thickness warrants are not held, which suppresses boundary spurs. Every
/// removal preserves topology, so the number of 8-connected components and
/// holes is unchanged. Throws std::invalid_argument for an empty mask.
BinaryMask medial_axis(const BinaryMask& m);

/// Removes simple non-end pixels until none remain. A skeleton produced by
/// `medial_axis` is a fixed point.
BinaryMask thin(const BinaryMask& m);

/// True when removing (x, y) from `m` preserves 8/4 topology.
bool is_simple_pixel(const BinaryMask& m, int x, int y);

}  // namespace scribble
