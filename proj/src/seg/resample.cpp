#include "scribble/seg/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scribble {
namespace {

void check_box(const Box& box, int w, int h, int tw, int th) {
    if (box.width < 1 || box.height < 1 || box.x < 0 || box.y < 0 || box.right() > w ||
        box.bottom() > h) {
        throw std::invalid_argument("crop box outside the image");
    }
    if (tw < 1 || th < 1) throw std::invalid_argument("resample target must be positive");
}

}  // namespace

BinaryMask resample_nearest(const BinaryMask& src, const Box& box, int target_w, int target_h) {
    check_box(box, src.width(), src.height(), target_w, target_h);
    BinaryMask out(target_w, target_h);
    for (int y = 0; y < target_h; ++y) {
        const int sy = nearest_source(y, box.y, box.height, target_h);
        for (int x = 0; x < target_w; ++x) {
            out.set(x, y, src.get(nearest_source(x, box.x, box.width, target_w), sy));
        }
    }
    return out;
}

RgbImage resample_bilinear(const RgbImage& src, const Box& box, int target_w, int target_h) {
    check_box(box, src.width, src.height, target_w, target_h);
    RgbImage out(target_w, target_h);
    if (box.width == target_w && box.height == target_h) {
        for (int y = 0; y < target_h; ++y) {
            for (int x = 0; x < target_w; ++x) out.set(x, y, src.at(box.x + x, box.y + y));
        }
        return out;
    }
    const double sx = static_cast<double>(box.width) / target_w;
    const double sy = static_cast<double>(box.height) / target_h;
    for (int y = 0; y < target_h; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, box.height - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, box.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < target_w; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, box.width - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, box.width - 1);
            const double wx = fx - x0;
            const auto a = src.at(box.x + x0, box.y + y0), b = src.at(box.x + x1, box.y + y0);
            const auto c = src.at(box.x + x0, box.y + y1), d = src.at(box.x + x1, box.y + y1);
            std::array<std::uint8_t, 3> px{};
            for (int k = 0; k < 3; ++k) {
                const double top = a[k] + wx * (b[k] - a[k]);
                const double bot = c[k] + wx * (d[k] - c[k]);
                px[k] = static_cast<std::uint8_t>(std::lround(top + wy * (bot - top)));
            }
            out.set(x, y, px);
        }
    }
    return out;
}

SegmentationRequest crop_request(const RgbImage& image, const ScribbleMaps& scribbles,
                                 const BinaryMask& previous_mask, const CropDescriptor& crop) {
    const int tw = crop.target_width, th = crop.target_height;
    ScribbleMaps maps(tw, th);
    maps.add(resample_nearest(scribbles.positive(), crop.box, tw, th), Polarity::positive);
    maps.add(resample_nearest(scribbles.negative(), crop.box, tw, th), Polarity::negative);
    SegmentationRequest req{resample_bilinear(image, crop.box, tw, th), std::move(maps),
                            resample_nearest(previous_mask, crop.box, tw, th), crop};
    req.validate();
    return req;
}

BinaryMask paste_back(const BinaryMask& pred, const CropDescriptor& crop, const BinaryMask& previous) {
    if (pred.width() != crop.target_width || pred.height() != crop.target_height) {
        throw std::invalid_argument("paste_back: prediction size differs from the crop target");
    }
    const Box& b = crop.box;
    BinaryMask out = previous;
    for (int y = 0; y < b.height; ++y) {
        const int ry = nearest_source(y, 0, crop.target_height, b.height);
        for (int x = 0; x < b.width; ++x) {
            out.set(b.x + x, b.y + y, pred.get(nearest_source(x, 0, crop.target_width, b.width), ry));
        }
    }
    return out;
}

}  // namespace scribble
