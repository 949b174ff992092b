#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scribble/seg/geodesic.hpp"
#include "scribble/seg/oracle.hpp"
#include "scribble/seg/resample.hpp"
#include "support/oracles.hpp"

using namespace scribble;

namespace {

BinaryMask disk_mask(int w, int h, double cx, double cy, double r) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y);
        }
    }
    return m;
}

RgbImage two_tone(const BinaryMask& a, std::array<std::uint8_t, 3> in, std::array<std::uint8_t, 3> out) {
    RgbImage img(a.width(), a.height(), out);
    for (const auto& p : a.pixels()) img.set(p.x, p.y, in);
    return img;
}

SegmentationRequest request_with(const RgbImage& img, const BinaryMask& pos, const BinaryMask& neg,
                                 const BinaryMask& prev) {
    ScribbleMaps maps(img.width, img.height);
    maps.add(pos, Polarity::positive);
    maps.add(neg, Polarity::negative);
    return make_request(img, maps, prev);
}

}  // namespace

TEST(Request, ValidateRejectsMismatch) {
    RgbImage img(8, 8);
    EXPECT_THROW(make_request(img, ScribbleMaps(8, 8), BinaryMask(8, 7)), std::invalid_argument);
    SegmentationRequest req = make_request(img, ScribbleMaps(8, 8), BinaryMask(8, 8));
    req.previous_mask = BinaryMask(7, 8);
    EXPECT_THROW(req.validate(), std::invalid_argument);
    EXPECT_TRUE(make_request(img, ScribbleMaps(8, 8), BinaryMask(8, 8)).crop.is_identity_scale());
}

TEST(Oracle, NoiseZeroReturnsGt) {
    auto gt = disk_mask(40, 30, 20, 15, 9);
    RgbImage img(40, 30);
    OracleSegmenter o(gt);
    EXPECT_EQ(o.predict(make_request(img, ScribbleMaps(40, 30), BinaryMask(40, 30))), gt);
    EXPECT_EQ(o.name(), "oracle");
}

TEST(Oracle, IgnoresScribbles) {
    auto gt = disk_mask(40, 30, 20, 15, 9);
    RgbImage img(40, 30);
    auto req = request_with(img, oracle::rect(40, 30, 0, 0, 5, 5), oracle::rect(40, 30, 18, 13, 4, 4),
                            BinaryMask(40, 30, true));
    EXPECT_EQ(oracle_predict(req, gt, 0.0), gt);
}

TEST(Oracle, NoisyAnswerIsPinned) {
    auto gt = disk_mask(48, 48, 24, 22, 14);
    OracleSegmenter o(gt, 0.5, 7);
    // Seed 7 at noise 0.5 draws a pure vertical shift of 5 pixels.
    EXPECT_EQ(o.answer(), translate(gt, 0, 5));
    EXPECT_EQ(gt.count(), 613u);
    EXPECT_DOUBLE_EQ(iou(o.answer(), gt), 476.0 / 750.0);
    EXPECT_LT(iou(o.answer(), gt), 1.0);
    EXPECT_EQ(OracleSegmenter(gt, 0.5, 7).answer(), o.answer());
    EXPECT_THROW(OracleSegmenter(gt, -1.0), std::invalid_argument);
}

TEST(Oracle, CropMapsThroughDescriptor) {
    auto gt = disk_mask(60, 40, 30, 20, 12);
    RgbImage img(60, 40);
    OracleSegmenter o(gt);
    const CropDescriptor native{{10, 5, 30, 25}, 30, 25};
    const auto req = crop_request(img, ScribbleMaps(60, 40), BinaryMask(60, 40), native);
    EXPECT_EQ(o.predict(req), crop(gt, native.box));
    EXPECT_EQ(paste_back(o.predict(req), native, gt), gt);

    const CropDescriptor scaled{{10, 5, 30, 25}, 64, 64};
    const auto big = crop_request(img, ScribbleMaps(60, 40), BinaryMask(60, 40), scaled);
    EXPECT_EQ(o.predict(big), resample_nearest(gt, scaled.box, 64, 64));
}

TEST(Resample, NearestSourceCenters) {
    // Identity mapping.
    for (int i = 0; i < 10; ++i) EXPECT_EQ(nearest_source(i, 3, 10, 10), 3 + i);
    // Downscale by two picks the second pixel of each pair: floor((2i+1)·2/2).
    EXPECT_EQ(nearest_source(0, 0, 10, 5), 1);
    EXPECT_EQ(nearest_source(4, 0, 10, 5), 9);
    // Upscale by two repeats each pixel.
    EXPECT_EQ(nearest_source(0, 0, 5, 10), 0);
    EXPECT_EQ(nearest_source(1, 0, 5, 10), 0);
    EXPECT_EQ(nearest_source(9, 0, 5, 10), 4);
}

TEST(Resample, BilinearIdentityIsExactCopy) {
    std::mt19937 gen(1);
    RgbImage img(17, 11);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(gen());
    const Box box{3, 2, 9, 7};
    const auto out = resample_bilinear(img, box, 9, 7);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 9; ++x) ASSERT_EQ(out.at(x, y), img.at(x + 3, y + 2));
    }
}

TEST(Resample, BilinearUpscaleStaysInRange) {
    RgbImage img(2, 1);
    img.set(0, 0, {0, 0, 0});
    img.set(1, 0, {200, 100, 50});
    const auto out = resample_bilinear(img, {0, 0, 2, 1}, 8, 1);
    EXPECT_EQ(out.at(0, 0)[0], 0);
    EXPECT_EQ(out.at(7, 0)[0], 200);
    for (int x = 1; x < 8; ++x) EXPECT_GE(out.at(x, 0)[0], out.at(x - 1, 0)[0]);
}

TEST(Resample, PasteBackRoundTripsAtNativeScale) {
    std::mt19937 gen(4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = oracle::random_blobs(gen, 16, 40);
        const auto prev = oracle::random_blobs(gen, m.width(), m.width());
        if (!prev.same_shape(m)) continue;
        const Box box{2, 3, m.width() - 5, m.height() - 6};
        const CropDescriptor c{box, box.width, box.height};
        const auto out = paste_back(resample_nearest(m, box, box.width, box.height), c, prev);
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < m.width(); ++x) {
                ASSERT_EQ(out.get(x, y), box.contains(x, y) ? m.get(x, y) : prev.get(x, y));
            }
        }
    }
    EXPECT_THROW(paste_back(BinaryMask(3, 3), {{0, 0, 4, 4}, 4, 4}, BinaryMask(8, 8)),
                 std::invalid_argument);
}

TEST(Resample, UpscaledPasteBackRecoversBlocks) {
    // 2× upscale then paste back by nearest neighbor is exact.
    std::mt19937 gen(6);
    const auto m = oracle::random_blobs(gen, 20, 20);
    const Box box{0, 0, m.width(), m.height()};
    const CropDescriptor c{box, 2 * m.width(), 2 * m.height()};
    EXPECT_EQ(paste_back(resample_nearest(m, box, c.target_width, c.target_height), c,
                         BinaryMask(m.width(), m.height())),
              m);
}

TEST(GeodesicDistance, UniformImageIsChamferDistance) {
    RgbImage img(9, 9, {50, 50, 50});
    BinaryMask seed(9, 9);
    seed.set(0, 0);
    const auto d = geodesic_distance(img, seed, 10.0);
    EXPECT_DOUBLE_EQ(d.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(d.at(4, 0), 4.0);
    EXPECT_NEAR(d.at(3, 3), 3 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(d.at(5, 2), 2 * std::sqrt(2.0) + 3, 1e-12);
    const auto none = geodesic_distance(img, BinaryMask(9, 9), 10.0);
    EXPECT_TRUE(std::isinf(none.at(4, 4)));
}

TEST(GeodesicDistance, EdgeCostUsesRawColorDifference) {
    RgbImage img(2, 1);
    img.set(1, 0, {3, 4, 0});  // ‖Δ‖ = 5
    BinaryMask seed(2, 1);
    seed.set(0, 0);
    EXPECT_DOUBLE_EQ(geodesic_distance(img, seed, 10.0).at(1, 0), 1.0 + 10.0 * 5.0);
}

TEST(Geodesic, TwoRegionImageIsExact) {
    std::mt19937 gen(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_disks(gen, 48, 40, 1);
        const auto img = two_tone(a, {220, 30, 30}, {30, 30, 220});
        const auto pos = a.pixels();
        const auto neg = (~a).pixels();
        BinaryMask p(48, 40), n(48, 40);
        p.set(pos[pos.size() / 2]);
        n.set(neg[neg.size() / 3]);
        EXPECT_EQ(geodesic_predict(request_with(img, p, n, BinaryMask(48, 40))), a) << trial;
    }
}

TEST(Geodesic, NoScribblesReturnsPrevious) {
    RgbImage img(20, 20);
    auto prev = disk_mask(20, 20, 10, 10, 5);
    GeodesicSegmenter seg;
    EXPECT_EQ(seg.predict(make_request(img, ScribbleMaps(20, 20), prev)), prev);
    EXPECT_TRUE(seg.predict(make_request(img, ScribbleMaps(20, 20), BinaryMask(20, 20))).none());
    EXPECT_EQ(seg.name(), "geodesic");
    EXPECT_FALSE(seg.input_size());
}

TEST(Geodesic, UniformImageDotGrowsBasinAwayFromBorder) {
    RgbImage img(21, 21, {90, 90, 90});
    BinaryMask dot(21, 21);
    dot.set(10, 10);
    const auto out = geodesic_predict(request_with(img, dot, BinaryMask(21, 21), BinaryMask(21, 21)));
    EXPECT_TRUE(out.get(10, 10));
    EXPECT_GT(out.count(), 1u);
    for (int i = 0; i < 21; ++i) {
        EXPECT_FALSE(out.get(i, 0));
        EXPECT_FALSE(out.get(i, 20));
        EXPECT_FALSE(out.get(0, i));
        EXPECT_FALSE(out.get(20, i));
    }
    // Oracle: a pixel is positive iff its chamfer distance to the dot is
    // smaller than to the border ring.
    auto chamfer = [](int dx, int dy) {
        dx = std::abs(dx);
        dy = std::abs(dy);
        return std::sqrt(2.0) * std::min(dx, dy) + std::abs(dx - dy);
    };
    for (int y = 0; y < 21; ++y) {
        for (int x = 0; x < 21; ++x) {
            const double to_dot = chamfer(x - 10, y - 10);
            const double to_border = std::min({x, y, 20 - x, 20 - y});
            if (std::abs(to_dot - to_border) > 1e-9) {
                EXPECT_EQ(out.get(x, y), to_dot < to_border) << x << "," << y;
            }
        }
    }
}

TEST(Geodesic, ScribblePixelsAreAuthoritative) {
    std::mt19937 gen(13);
    for (int trial = 0; trial < 20; ++trial) {
        RgbImage img(24, 24);
        for (auto& v : img.data) v = static_cast<std::uint8_t>(gen());
        const auto pos = oracle::random_blobs(gen, 24, 24, 2);
        const auto neg = oracle::random_blobs(gen, 24, 24, 2) - pos;
        const auto prev = oracle::random_blobs(gen, 24, 24);
        const auto out = geodesic_predict(request_with(img, pos, neg, prev));
        EXPECT_TRUE(pos.subset_of(out));
        EXPECT_FALSE(neg.intersects(out));
    }
}

TEST(Geodesic, NegativeStrokeRemovesFalsePositiveBlob) {
    auto a = disk_mask(40, 40, 14, 20, 8);
    auto b = disk_mask(40, 40, 32, 20, 5);
    ASSERT_EQ(oracle::component_count(a | b), 2);
    const auto img = two_tone(a | b, {200, 200, 40}, {20, 20, 20});
    BinaryMask pos(40, 40), neg(40, 40);
    pos.set(14, 20);
    neg.set(32, 20);
    EXPECT_EQ(geodesic_predict(request_with(img, pos, neg, a | b)), a);
}

TEST(Geodesic, PreviousMaskSeedsWhenNoPositiveStroke) {
    auto a = disk_mask(40, 40, 14, 20, 8);
    const auto img = two_tone(a, {200, 200, 40}, {20, 20, 20});
    BinaryMask neg(40, 40);
    neg.set(35, 5);
    EXPECT_EQ(geodesic_predict(request_with(img, BinaryMask(40, 40), neg, a)), a);
}

TEST(Geodesic, Deterministic) {
    std::mt19937 gen(14);
    RgbImage img(32, 32);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(gen());
    const auto pos = oracle::random_blobs(gen, 32, 32, 1);
    const auto neg = oracle::random_blobs(gen, 32, 32, 1) - pos;
    const auto req = request_with(img, pos, neg, BinaryMask(32, 32));
    EXPECT_EQ(geodesic_predict(req), geodesic_predict(req));
}
