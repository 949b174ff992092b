#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "scribble/detsim/skeleton_graph.hpp"
#include "scribble/log.hpp"
#include "scribble/mask/distance.hpp"
#include "scribble/mask/morphology.hpp"
#include "scribble/mask/skeleton.hpp"
#include "scribble/seg/oracle.hpp"
#include "scribble/train/curve.hpp"
#include "scribble/train/train_sim.hpp"
#include "support/oracles.hpp"

using namespace scribble;

namespace {

std::shared_ptr<const RgbImage> gray_image(int w, int h) {
    return std::make_shared<const RgbImage>(w, h, std::array<std::uint8_t, 3>{128, 128, 128});
}

BinaryMask disk_mask(int w, int h, double cx, double cy, double r) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y);
        }
    }
    return m;
}

// Closed-form truncated geometric weights.
double stroke_count_probability(int n, int max_n, double decay) {
    double total = 0;
    for (int k = 1; k <= max_n; ++k) total += std::pow(decay, k - 1);
    return std::pow(decay, n - 1) / total;
}

struct LogCapture {
    std::vector<std::string> lines;
    LogCapture() {
        set_log_sink([this](std::string_view s) { lines.emplace_back(s); });
    }
    ~LogCapture() { set_log_sink(nullptr); }
};

}  // namespace

TEST(Rng, SameSeedSameSequence) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs = differs || x != c.next();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, MatchesStandardEngine) {
    // The raw stream is std::mt19937_64, whose output is fixed by the standard.
    Rng r(5489);
    std::mt19937_64 ref(5489);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(r.next(), ref());
    EXPECT_EQ(Rng(5489).next(), std::mt19937_64(5489)());
}

TEST(Rng, RangesAndSplit) {
    Rng r(1);
    std::map<int, int> seen;
    for (int i = 0; i < 20000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const int k = r.uniform_int(-2, 2);
        ASSERT_GE(k, -2);
        ASSERT_LE(k, 2);
        ++seen[k];
    }
    EXPECT_EQ(seen.size(), 5u);
    for (auto [k, c] : seen) EXPECT_NEAR(c / 20000.0, 0.2, 0.02) << k;
    EXPECT_EQ(r.uniform_int(7, 7), 7);
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_EQ(Rng(9).split(3).next(), Rng(derive_seed(9, 3)).next());
}

TEST(Brush, OffsetCountsMatchDiskDefinition) {
    for (int t = 1; t <= 9; ++t) {
        const double r = t / 2.0;
        std::size_t expect = 0;
        for (int dy = -t; dy <= t; ++dy) {
            for (int dx = -t; dx <= t; ++dx) expect += (dx * dx + dy * dy <= r * r) ? 1 : 0;
        }
        EXPECT_EQ(brush_offsets(t).size(), expect) << t;
    }
    EXPECT_EQ(brush_offsets(1).size(), 1u);
    EXPECT_EQ(brush_offsets(3).size(), 9u);
    EXPECT_THROW(brush_offsets(0), std::invalid_argument);
}

TEST(Brush, HorizontalLineThicknessOne) {
    Stroke s{{{2, 3}, {9, 3}}, 1, Polarity::positive};
    EXPECT_EQ(rasterize(s, 12, 6), oracle::rect(12, 6, 2, 3, 8, 1));
}

TEST(Brush, ClipsToCanvas) {
    Stroke s{{{-5, 0}, {20, 0}}, 3, Polarity::positive};
    const auto r = rasterize(s, 8, 4);
    EXPECT_EQ(r, oracle::rect(8, 4, 0, 0, 8, 2));
}

TEST(ScribbleMaps, LatestRasterWins) {
    ScribbleMaps maps(6, 6);
    maps.add(oracle::rect(6, 6, 0, 0, 4, 4), Polarity::positive);
    maps.add(oracle::rect(6, 6, 2, 2, 4, 4), Polarity::negative);
    EXPECT_FALSE(maps.positive().intersects(maps.negative()));
    EXPECT_EQ(maps.negative().count(), 16u);
    EXPECT_EQ(maps.positive().count(), 12u);
    EXPECT_THROW(maps.add(BinaryMask(5, 6), Polarity::positive), std::invalid_argument);
}

TEST(Polarity, WireNames) {
    EXPECT_EQ(to_string(Polarity::positive), "pos");
    EXPECT_EQ(parse_polarity("neg"), Polarity::negative);
    EXPECT_THROW(parse_polarity("x"), std::invalid_argument);
}

TEST(Curve, BezierEndpointsAndStep) {
    const std::array<Vec2, 4> c{{{0, 0}, {10, 20}, {30, -5}, {40, 10}}};
    const auto s = sample_cubic_bezier(c, 0.5);
    ASSERT_GE(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s.front().x, 0.0);
    EXPECT_DOUBLE_EQ(s.back().x, 40.0);
    EXPECT_DOUBLE_EQ(s.back().y, 10.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_LE(std::hypot(s[i].x - s[i - 1].x, s[i].y - s[i - 1].y), 0.5 + 1e-9);
    }
}

TEST(Curve, CatmullRomTwoPointsIsStraight) {
    const std::vector<Vec2> c{{0, 0}, {10, 5}};
    for (const auto& p : sample_catmull_rom(c)) EXPECT_NEAR(p.y, p.x / 2.0, 1e-9);
}

TEST(Curve, CatmullRomPassesThroughControls) {
    const std::vector<Vec2> c{{0, 0}, {5, 8}, {12, 3}, {20, 9}};
    const auto path = to_pixel_path(sample_catmull_rom(c, 0.25));
    for (const auto& v : c) {
        const Point p{static_cast<int>(v.x), static_cast<int>(v.y)};
        EXPECT_NE(std::find(path.begin(), path.end(), p), path.end()) << p.x << "," << p.y;
    }
    for (std::size_t i = 1; i < path.size(); ++i) EXPECT_FALSE(path[i] == path[i - 1]);
}

TEST(Curve, SubsampleKeepsEnds) {
    std::vector<Point> path;
    for (int i = 0; i < 50; ++i) path.push_back({i, 0});
    const auto s = subsample_evenly(path, 8);
    ASSERT_EQ(s.size(), 8u);
    EXPECT_EQ(s.front(), path.front());
    EXPECT_EQ(s.back(), path.back());
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1].x, s[i].x);
    EXPECT_EQ(subsample_evenly(std::span(path).first(5), 8).size(), 5u);
}

TEST(StrokeCount, MaxOneIsAlwaysOne) {
    TrainSimConfig cfg;
    cfg.max_strokes = 1;
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_stroke_count(cfg, rng), 1);
}

TEST(StrokeCount, FollowsTruncatedGeometricLaw) {
    TrainSimConfig cfg;
    Rng rng(2024);
    const int draws = 100000;
    std::vector<int> hist(cfg.max_strokes + 1, 0);
    for (int i = 0; i < draws; ++i) {
        const int n = sample_stroke_count(cfg, rng);
        ASSERT_GE(n, 1);
        ASSERT_LE(n, cfg.max_strokes);
        ++hist[n];
    }
    const double p1 = hist[1] / static_cast<double>(draws);
    EXPECT_NEAR(stroke_count_probability(1, 16, 0.8), 0.2058, 0.0001);
    EXPECT_NEAR(p1, 0.2058, 0.005);
    EXPECT_NEAR(static_cast<double>(hist[2]) / hist[1], 0.8, 0.02);
}

TEST(Thickness, RangeAndMean) {
    TrainSimConfig cfg;
    cfg.min_thickness = cfg.max_thickness = 3;
    Rng rng(8);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(sample_thickness(cfg, rng), 3);

    TrainSimConfig def;
    std::map<int, int> seen;
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const int t = sample_thickness(def, rng);
        ++seen[t];
        sum += t;
    }
    EXPECT_EQ(seen.size(), 5u);
    EXPECT_EQ(seen.begin()->first, 3);
    EXPECT_EQ(seen.rbegin()->first, 7);
    EXPECT_NEAR(sum / 100000.0, 5.0, 0.05);
}

TEST(BoundaryOffsets, CeilHalfThickness) {
    EXPECT_EQ(protect_radius(1), 1);
    EXPECT_EQ(protect_radius(3), 2);
    EXPECT_EQ(protect_radius(4), 2);
    EXPECT_EQ(boundary_offset(1), 2);
    EXPECT_EQ(boundary_offset(2), 2);
    EXPECT_EQ(boundary_offset(7), 5);
}

TEST(Bezier, SinglePixelRegionGivesDot) {
    BinaryMask m(9, 9);
    m.set(4, 6);
    Rng rng(1);
    const auto s = gen_bezier_scribble(m, 3, rng);
    ASSERT_FALSE(s.points.empty());
    for (const auto& p : s.points) EXPECT_EQ(p, (Point{4, 6}));
    EXPECT_EQ(s.thickness, 3);
}

TEST(Bezier, DeterministicForSeed) {
    auto region = disk_mask(40, 40, 20, 20, 12);
    Rng a(77), b(77);
    EXPECT_EQ(gen_bezier_scribble(region, 5, a), gen_bezier_scribble(region, 5, b));
}

TEST(Generators, EmptyRegionThrows) {
    Rng rng(0);
    BinaryMask empty(5, 5);
    for (auto k : {MetaSimulator::bezier, MetaSimulator::axial, MetaSimulator::boundary,
                   MetaSimulator::linked_points}) {
        EXPECT_THROW(gen_scribble(k, empty, 3, rng), std::invalid_argument);
    }
}

TEST(Axial, LineRegionFollowsLine) {
    auto line = oracle::rect(30, 5, 2, 2, 25, 1);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const auto s = gen_axial_scribble(line, 3, rng);
        EXPECT_GE(s.points.size(), 7u);  // half of a branch reaching at least mid-line
        for (const auto& p : s.points) EXPECT_TRUE(line.get(p));
    }
}

TEST(Axial, PointsLieOnMedialAxis) {
    std::mt19937 gen(31);
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto region = oracle::random_disks(gen, 48, 40, 2);
        const auto axis = medial_axis(region);
        const auto s = gen_axial_scribble(region, 3, rng);
        for (const auto& p : s.points) ASSERT_TRUE(axis.get(p)) << trial;
        // consecutive points are 8-neighbors
        for (std::size_t i = 1; i < s.points.size(); ++i) {
            ASSERT_LE(std::abs(s.points[i].x - s.points[i - 1].x), 1);
            ASSERT_LE(std::abs(s.points[i].y - s.points[i - 1].y), 1);
        }
    }
}

TEST(Axial, DiskGivesShortCentralStroke) {
    auto disk = disk_mask(31, 31, 15, 15, 10);
    Rng rng(6);
    const auto s = gen_axial_scribble(disk, 3, rng);
    for (const auto& p : s.points) EXPECT_LE(std::hypot(p.x - 15, p.y - 15), 3.0);
}

TEST(TraceContour, RectanglePerimeter) {
    auto m = oracle::rect(12, 10, 2, 3, 6, 4);
    const auto c = trace_contour(m, {2, 3});
    EXPECT_EQ(c.size(), 2u * (6 + 4) - 4);
    EXPECT_EQ(c.front(), (Point{2, 3}));
    EXPECT_EQ(c[1], (Point{3, 3}));  // clockwise: east along the top edge
    for (const auto& p : c) {
        EXPECT_TRUE(m.get(p));
        EXPECT_TRUE(p.x == 2 || p.x == 7 || p.y == 3 || p.y == 6);
    }
}

TEST(TraceContour, SinglePixelAndBadStart) {
    BinaryMask m(4, 4);
    m.set(1, 1);
    EXPECT_EQ(trace_contour(m, {1, 1}).size(), 1u);
    EXPECT_THROW(trace_contour(m, {0, 0}), std::invalid_argument);
}

TEST(Boundary, FullFrameGivesRingInsideBorder) {
    BinaryMask full(20, 14, true);
    for (int t : {1, 2}) {
        ASSERT_EQ(boundary_offset(t), 2);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            const auto s = gen_boundary_scribble(full, t, rng);
            ASSERT_FALSE(s.points.empty());
            // Ring of pixels at distance 2 from outside: index 1 on each side.
            for (const auto& p : s.points) {
                ASSERT_TRUE(p.x >= 1 && p.x <= 18 && p.y >= 1 && p.y <= 12);
                ASSERT_TRUE(p.x == 1 || p.x == 18 || p.y == 1 || p.y == 12) << p.x << "," << p.y;
            }
            const int ring = 2 * (18 + 12) - 4;
            ASSERT_GE(static_cast<int>(s.points.size()), static_cast<int>(0.3 * ring) - 1);
            ASSERT_LE(static_cast<int>(s.points.size()), ring);
        }
    }
}

TEST(Boundary, PathSitsInOffsetBand) {
    std::mt19937 gen(41);
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto region = oracle::random_disks(gen, 48, 48, 3);
        const int t = 3 + trial % 5;
        const auto off = boundary_offset(t);
        const auto d = distance_transform(region);
        BinaryMask inner(48, 48);
        for (std::size_t i = 0; i < d.values.size(); ++i) inner.data()[i] = d.values[i] >= off;
        if (inner.none()) continue;
        const auto s = gen_boundary_scribble(region, t, rng);
        for (const auto& p : s.points) {
            const double v = d.at(p.x, p.y);
            ASSERT_GE(v, off);
            ASSERT_LT(v, off + 1.0 + 1e-9);
        }
    }
}

TEST(Boundary, ThinRegionFallsBackToAxial) {
    auto thin_bar = oracle::rect(30, 10, 3, 4, 20, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng a(seed), b(seed);
        EXPECT_EQ(gen_boundary_scribble(thin_bar, 3, a), gen_axial_scribble(thin_bar, 3, b));
    }
}

TEST(LinkedPoints, TwoToFivePointsInRegion) {
    auto region = disk_mask(30, 30, 15, 15, 9);
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const auto s = gen_linked_points_scribble(region, 3, rng);
        ASSERT_GE(s.points.size(), 2u);
        ASSERT_LE(s.points.size(), 5u);
        for (const auto& p : s.points) ASSERT_TRUE(region.get(p));
    }
}

TEST(BoundaryStrategy, Cases) {
    auto target = oracle::rect(10, 10, 0, 0, 6, 10);
    auto raster = oracle::rect(10, 10, 4, 4, 3, 1);  // (6,4) is outside the target
    raster.set(7, 0);
    raster.set(8, 0);
    EXPECT_EQ(apply_boundary_strategy(raster, target, BoundaryStrategy::allow_error, 3), raster);
    const auto clean = apply_boundary_strategy(raster, target, BoundaryStrategy::clean_boundary, 3);
    EXPECT_EQ(raster.count() - clean.count(), 3u);
    EXPECT_TRUE(clean.subset_of(target));

    const auto prot = apply_boundary_strategy(raster, target, BoundaryStrategy::protect_boundary, 3);
    EXPECT_TRUE(prot.subset_of(erode(target, 2)));

    // Erosion empty → clean_boundary.
    auto sliver = oracle::rect(10, 10, 2, 2, 2, 6);
    ASSERT_TRUE(erode(sliver, 2).none());
    EXPECT_EQ(apply_boundary_strategy(raster | sliver, sliver, BoundaryStrategy::protect_boundary, 3),
              sliver & (raster | sliver));
    EXPECT_EQ(permitted_region(sliver, BoundaryStrategy::protect_boundary, 3), sliver);
    EXPECT_THROW(apply_boundary_strategy(BinaryMask(3, 3), target, BoundaryStrategy::clean_boundary, 3),
                 std::invalid_argument);
}

TEST(BoundaryStrategy, ParseAndPrint) {
    for (auto s : {BoundaryStrategy::allow_error, BoundaryStrategy::clean_boundary,
                   BoundaryStrategy::protect_boundary}) {
        EXPECT_EQ(parse_boundary_strategy(to_string(s)), s);
    }
    EXPECT_THROW(parse_boundary_strategy("nope"), std::invalid_argument);
}

TEST(Containment, GeneratorsStayInsideTarget) {
    std::mt19937 gen(55);
    Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        const auto target = oracle::random_blobs(gen, 12, 48);
        for (auto kind : {MetaSimulator::bezier, MetaSimulator::axial, MetaSimulator::boundary}) {
            const int t = 3 + trial % 5;
            for (auto strat : {BoundaryStrategy::clean_boundary, BoundaryStrategy::protect_boundary}) {
                const auto allowed = permitted_region(target, strat, t);
                auto s = gen_scribble(kind, allowed, t, rng);
                const auto out = apply_boundary_strategy(rasterize(s, target.width(), target.height()),
                                                         target, strat, t);
                ASSERT_TRUE(out.subset_of(target));
                if (strat == BoundaryStrategy::protect_boundary) {
                    const auto eroded = erode(target, protect_radius(t));
                    if (eroded.any()) {
                        ASSERT_TRUE(out.subset_of(eroded));
                    }
                }
            }
        }
    }
}

TEST(Perturb, ZeroMagnitudeIsIdentity) {
    auto gt = disk_mask(30, 30, 15, 15, 8);
    EXPECT_EQ(apply_perturbation(gt, PerturbParams{}), gt);
}

TEST(Perturb, EraseOnlyIsSubset) {
    std::mt19937 gen(2);
    Rng rng(2);
    PerturbConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        const auto gt = oracle::random_blobs(gen);
        auto p = sample_perturbation(gt, cfg, rng);
        p.dilate_radius = p.erode_radius = p.dx = p.dy = 0;
        if (p.erase.empty()) p.erase.push_back({0, 0, 3, 3});
        EXPECT_TRUE(apply_perturbation(gt, p).subset_of(gt));
    }
}

TEST(Perturb, TranslationOverlapArithmetic) {
    PerturbParams p;
    p.dx = 2;
    // 20 wide × 10 tall: overlap 18·10, union 2·200 − 180.
    auto wide = oracle::rect(40, 30, 5, 5, 20, 10);
    EXPECT_DOUBLE_EQ(iou(apply_perturbation(wide, p), wide), 180.0 / 220.0);
    // 10 wide × 20 tall gives the 160/240 figure.
    auto tall = oracle::rect(40, 30, 5, 5, 10, 20);
    EXPECT_DOUBLE_EQ(iou(apply_perturbation(tall, p), tall), 160.0 / 240.0);
}

TEST(Perturb, OperationOrderDilateErodeShiftErase) {
    auto gt = oracle::rect(30, 30, 10, 10, 6, 6);
    PerturbParams p;
    p.dilate_radius = 2;
    p.erode_radius = 2;
    p.dx = 3;
    p.erase.push_back({13, 10, 2, 2});
    auto expect = translate(erode(dilate(gt, 2), 2), 3, 0);
    for (int y = 10; y < 12; ++y) {
        for (int x = 13; x < 15; ++x) expect.set(x, y, false);
    }
    EXPECT_EQ(apply_perturbation(gt, p), expect);
}

TEST(Perturb, SampledParamsRespectLimits) {
    std::mt19937 gen(71);
    Rng rng(71);
    PerturbConfig cfg;
    int ops_seen[4] = {0, 0, 0, 0};
    for (int trial = 0; trial < 500; ++trial) {
        const auto gt = oracle::random_blobs(gen);
        const auto bb = *gt.bounding_box();
        const auto p = sample_perturbation(gt, cfg, rng);
        const bool any = p.dilate_radius > 0 || p.erode_radius > 0 || p.dx != 0 || p.dy != 0 ||
                         !p.erase.empty();
        ops_seen[0] += p.dilate_radius > 0;
        ops_seen[1] += p.erode_radius > 0;
        ops_seen[2] += p.dx != 0 || p.dy != 0;
        ops_seen[3] += !p.erase.empty();
        // A translation may draw (0, 0); everything else must be visible.
        if (!any) continue;
        ASSERT_LE(p.dilate_radius, cfg.max_dilate_radius);
        ASSERT_LE(p.erode_radius, cfg.max_erode_radius);
        ASSERT_LE(std::abs(p.dx), cfg.max_shift);
        ASSERT_LE(std::abs(p.dy), cfg.max_shift);
        ASSERT_LE(static_cast<int>(p.erase.size()), cfg.max_erase_count);
        for (const auto& b : p.erase) {
            ASSERT_GE(b.width, 1);
            ASSERT_GE(b.height, 1);
            ASSERT_LE(b.width * b.height,
                      std::max(1.0, cfg.max_erase_fraction * bb.width * bb.height) + 1e-9);
        }
    }
    for (int k = 0; k < 4; ++k) EXPECT_GT(ops_seen[k], 100) << k;
    EXPECT_THROW(sample_perturbation(BinaryMask(4, 4), cfg, rng), std::invalid_argument);
}

TEST(Perturb, ScaleShrinksMagnitudes) {
    auto gt = disk_mask(64, 64, 32, 32, 20);
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto p = sample_perturbation(gt, {}, rng, 0.2);
        ASSERT_LE(p.dilate_radius, 1);
        ASSERT_LE(p.erode_radius, 1);
        ASSERT_LE(std::abs(p.dx), 2);
    }
}

TEST(PreviousMask, PerturbOnlyRatio) {
    auto gt = disk_mask(32, 32, 16, 16, 9);
    TrainSimConfig cfg;
    cfg.pred_weight = 0;
    cfg.perturb_weight = 1;
    OracleSegmenter seg(gt);
    RgbImage img(32, 32);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        EXPECT_EQ(simulate_previous_mask(img, gt, &seg, cfg, rng).source, PreviousMaskSource::perturbation);
    }
}

TEST(PreviousMask, PredOnlyWithOracleReturnsOracleOutput) {
    auto gt = disk_mask(32, 32, 16, 16, 9);
    TrainSimConfig cfg;
    cfg.pred_weight = 1;
    cfg.perturb_weight = 0;
    OracleSegmenter seg(gt);
    RgbImage img(32, 32);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto prev = simulate_previous_mask(img, gt, &seg, cfg, rng);
        EXPECT_EQ(prev.source, PreviousMaskSource::iterative);
        EXPECT_EQ(prev.mask, gt);
    }
}

TEST(PreviousMask, DefaultRatioFrequency) {
    auto gt = disk_mask(24, 24, 12, 12, 6);
    TrainSimConfig cfg;  // 1 : 0.4
    cfg.proportion_axial = cfg.proportion_boundary = 0;
    cfg.max_strokes = 1;
    OracleSegmenter seg(gt);
    RgbImage img(24, 24);
    Rng rng(99);
    int iterative = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        iterative += simulate_previous_mask(img, gt, &seg, cfg, rng).source == PreviousMaskSource::iterative;
    }
    EXPECT_NEAR(iterative / static_cast<double>(draws), 1.0 / 1.4, 0.02);
}

TEST(PreviousMask, MissingSegmenterFallsBackWithWarning) {
    auto gt = disk_mask(32, 32, 16, 16, 9);
    TrainSimConfig cfg;
    cfg.perturb_weight = 0;
    RgbImage img(32, 32);
    Rng rng(1);
    LogCapture log;
    const auto prev = simulate_previous_mask(img, gt, nullptr, cfg, rng);
    EXPECT_EQ(prev.source, PreviousMaskSource::perturbation_fallback);
    ASSERT_EQ(log.lines.size(), 1u);
    EXPECT_NE(log.lines[0].find("segmenter"), std::string::npos);
}

TEST(PreviousMask, ColdStartProbabilityOne) {
    auto gt = disk_mask(32, 32, 16, 16, 9);
    TrainSimConfig cfg;
    cfg.cold_start_probability = 1.0;
    RgbImage img(32, 32);
    Rng rng(1);
    const auto prev = simulate_previous_mask(img, gt, nullptr, cfg, rng);
    EXPECT_EQ(prev.source, PreviousMaskSource::cold_start);
    EXPECT_TRUE(prev.mask.none());
}

TEST(Compose, ColdStartContainment) {
    std::mt19937 gen(101);
    Rng rng(101);
    for (auto strat : {BoundaryStrategy::clean_boundary, BoundaryStrategy::protect_boundary}) {
        TrainSimConfig cfg;
        cfg.cold_start_probability = 1.0;
        cfg.boundary_strategy = strat;
        for (int trial = 0; trial < 150; ++trial) {
            const auto gt = oracle::random_blobs(gen, 16, 40);
            const auto s = compose_training_sample(gray_image(gt.width(), gt.height()), gt, cfg, rng);
            ASSERT_EQ(s.previous_source, PreviousMaskSource::cold_start);
            ASSERT_TRUE(s.previous_mask.none());
            ASSERT_TRUE(s.scribbles.positive().subset_of(gt)) << trial;
            ASSERT_TRUE(s.scribbles.negative().subset_of(~gt)) << trial;
            ASSERT_EQ(s.strokes.size(), s.generators.size());
            ASSERT_GE(s.strokes.size(), 1u);
        }
    }
}

TEST(Compose, CorrectionStrokesStayInErrorRegions) {
    std::mt19937 gen(103);
    Rng rng(103);
    TrainSimConfig cfg;
    cfg.boundary_strategy = BoundaryStrategy::clean_boundary;
    cfg.pred_weight = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto gt = oracle::random_blobs(gen, 16, 40);
        const auto s = compose_training_sample(gray_image(gt.width(), gt.height()), gt, cfg, rng);
        if (s.previous_mask.none()) continue;
        ASSERT_TRUE(s.scribbles.positive().subset_of(gt - s.previous_mask)) << trial;
        ASSERT_TRUE(s.scribbles.negative().subset_of(s.previous_mask - gt)) << trial;
        ASSERT_FALSE(s.scribbles.positive().intersects(s.scribbles.negative()));
    }
}

TEST(Compose, ZeroProportionsMeanAllBezier) {
    TrainSimConfig cfg;
    cfg.proportion_axial = cfg.proportion_boundary = 0;
    Rng rng(3);
    auto gt = disk_mask(40, 40, 20, 20, 10);
    for (int i = 0; i < 50; ++i) {
        const auto s = compose_training_sample(gray_image(40, 40), gt, cfg, rng);
        for (auto g : s.generators) ASSERT_EQ(g, MetaSimulator::bezier);
    }
}

TEST(Compose, ProportionsAreHonored) {
    TrainSimConfig cfg;
    cfg.proportion_axial = 0.3;
    cfg.proportion_boundary = 0.5;
    cfg.cold_start_probability = 1.0;
    Rng rng(17);
    auto gt = disk_mask(40, 40, 20, 20, 12);
    std::map<MetaSimulator, int> seen;
    int total = 0;
    for (int i = 0; i < 400; ++i) {
        for (auto g : compose_training_sample(gray_image(40, 40), gt, cfg, rng).generators) {
            ++seen[g];
            ++total;
        }
    }
    EXPECT_NEAR(seen[MetaSimulator::axial] / static_cast<double>(total), 0.3, 0.04);
    EXPECT_NEAR(seen[MetaSimulator::boundary] / static_cast<double>(total), 0.5, 0.04);
    EXPECT_EQ(seen[MetaSimulator::linked_points], 0);
}

TEST(Compose, SameSeedIsBitIdentical) {
    auto gt = disk_mask(40, 40, 18, 22, 11);
    auto img = gray_image(40, 40);
    TrainSimConfig cfg;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng a(seed), b(seed);
        OracleSegmenter seg(gt, 0.5, seed);
        const auto s1 = compose_training_sample(img, gt, cfg, a, &seg);
        const auto s2 = compose_training_sample(img, gt, cfg, b, &seg);
        EXPECT_EQ(s1.scribbles, s2.scribbles);
        EXPECT_EQ(s1.previous_mask, s2.previous_mask);
        EXPECT_EQ(s1.strokes, s2.strokes);
        EXPECT_EQ(s1.generators, s2.generators);
        EXPECT_EQ(s1.previous_source, s2.previous_source);
    }
}

TEST(Compose, PerfectPreviousMaskIsResampled) {
    // Noise-free oracle always reproduces gt: every attempt is rejected and
    // the sample falls back to a cold start.
    auto gt = disk_mask(32, 32, 16, 16, 8);
    TrainSimConfig cfg;
    cfg.perturb_weight = 0;
    OracleSegmenter seg(gt);
    Rng rng(4);
    const auto s = compose_training_sample(gray_image(32, 32), gt, cfg, rng, &seg);
    EXPECT_EQ(s.previous_source, PreviousMaskSource::cold_start);
    EXPECT_TRUE(s.previous_mask.none());
    EXPECT_FALSE(s.scribbles.empty());
}

TEST(Compose, RejectsBadInput) {
    TrainSimConfig cfg;
    Rng rng(0);
    EXPECT_THROW(compose_training_sample(gray_image(8, 8), BinaryMask(8, 8), cfg, rng), std::invalid_argument);
    EXPECT_THROW(compose_training_sample(gray_image(8, 9), BinaryMask(8, 8, true), cfg, rng),
                 std::invalid_argument);
    cfg.decay = 0;
    EXPECT_THROW(compose_training_sample(gray_image(8, 8), BinaryMask(8, 8, true), cfg, rng),
                 std::invalid_argument);
}

TEST(DrawScribbles, SplitFollowsAreas) {
    TrainSimConfig cfg;
    cfg.proportion_axial = cfg.proportion_boundary = 0;
    auto pos = oracle::rect(40, 40, 0, 0, 40, 30);  // 1200 px
    auto neg = oracle::rect(40, 40, 0, 30, 40, 10);  // 400 px
    Rng rng(1);
    TrainingSample s{gray_image(40, 40), ScribbleMaps(40, 40), BinaryMask(40, 40), pos, {}, {}, {}};
    draw_scribbles(pos, neg, 8, cfg, rng, s);
    int n_pos = 0;
    for (const auto& st : s.strokes) n_pos += st.polarity == Polarity::positive;
    EXPECT_EQ(n_pos, 6);

    TrainingSample one{gray_image(40, 40), ScribbleMaps(40, 40), BinaryMask(40, 40), pos, {}, {}, {}};
    draw_scribbles(neg, pos, 1, cfg, rng, one);  // single stroke goes to the larger region
    ASSERT_EQ(one.strokes.size(), 1u);
    EXPECT_EQ(one.strokes[0].polarity, Polarity::negative);
}
