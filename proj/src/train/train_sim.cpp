#include "scribble/train/train_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scribble/detsim/skeleton_graph.hpp"
#include "scribble/log.hpp"
#include "scribble/mask/components.hpp"
#include "scribble/mask/distance.hpp"
#include "scribble/mask/morphology.hpp"
#include "scribble/mask/skeleton.hpp"
#include "scribble/seg/segmenter.hpp"
#include "scribble/train/curve.hpp"

namespace scribble {
namespace {

void require_nonempty(const BinaryMask& region, const char* who) {
    if (region.none()) throw std::invalid_argument(std::string(who) + ": empty region");
}

Point random_pixel(const std::vector<Point>& pixels, Rng& rng) {
    return pixels[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(pixels.size()) - 1))];
}

// Component of `m` (8-connected) containing a uniformly drawn true pixel, so
// components are picked with probability proportional to their area.
BinaryMask pick_component(const BinaryMask& m, Rng& rng) {
    const auto regions = connected_components(m, Connectivity::eight);
    if (regions.count() <= 1) return m;
    const Point p = random_pixel(m.pixels(), rng);
    return regions.region(regions.label_at(p.x, p.y));
}

// Clockwise from west, y pointing down.
constexpr std::array<Point, 8> kRing = {{{-1, 0}, {-1, -1}, {0, -1}, {1, -1},
                                         {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int ring_index(Point from, Point to) {
    for (int k = 0; k < 8; ++k) {
        if (from.x + kRing[k].x == to.x && from.y + kRing[k].y == to.y) return k;
    }
    throw std::logic_error("ring_index: points are not neighbors");
}

}  // namespace

std::string_view to_string(BoundaryStrategy s) {
    switch (s) {
        case BoundaryStrategy::allow_error: return "allow_error";
        case BoundaryStrategy::clean_boundary: return "clean_boundary";
        case BoundaryStrategy::protect_boundary: return "protect_boundary";
    }
    return "?";
}

BoundaryStrategy parse_boundary_strategy(std::string_view s) {
    if (s == "allow_error") return BoundaryStrategy::allow_error;
    if (s == "clean_boundary") return BoundaryStrategy::clean_boundary;
    if (s == "protect_boundary") return BoundaryStrategy::protect_boundary;
    throw std::invalid_argument("unknown boundary strategy '" + std::string(s) + "'");
}

std::string_view to_string(MetaSimulator s) {
    switch (s) {
        case MetaSimulator::bezier: return "bezier";
        case MetaSimulator::axial: return "axial";
        case MetaSimulator::boundary: return "boundary";
        case MetaSimulator::linked_points: return "linked_points";
    }
    return "?";
}

std::string_view to_string(PreviousMaskSource s) {
    switch (s) {
        case PreviousMaskSource::cold_start: return "cold_start";
        case PreviousMaskSource::iterative: return "iterative";
        case PreviousMaskSource::perturbation: return "perturbation";
        case PreviousMaskSource::perturbation_fallback: return "perturbation_fallback";
    }
    return "?";
}

void TrainSimConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("train config: " + what); };
    if (max_strokes < 1) fail("max_strokes must be >= 1");
    if (!(decay > 0.0 && decay <= 1.0)) fail("decay must be in (0, 1]");
    if (min_thickness < 1 || max_thickness < min_thickness) fail("bad thickness range");
    if (proportion_axial < 0 || proportion_boundary < 0 || proportion_linked < 0) {
        fail("proportions must be non-negative");
    }
    if (proportion_axial + proportion_boundary + proportion_linked > 1.0 + 1e-12) {
        fail("proportions sum above 1");
    }
    if (pred_weight < 0 || perturb_weight < 0) fail("pred/perturb weights must be non-negative");
    if (!(cold_start_probability >= 0.0 && cold_start_probability <= 1.0)) {
        fail("cold_start_probability must be in [0, 1]");
    }
    if (max_resample < 1) fail("max_resample must be >= 1");
    if (perturb.max_dilate_radius < 1 || perturb.max_erode_radius < 1 || perturb.max_shift < 0 ||
        perturb.max_erase_count < 1 || perturb.max_erase_fraction <= 0.0 ||
        perturb.op_probability < 0.0 || perturb.op_probability > 1.0) {
        fail("bad perturbation limits");
    }
}

int sample_stroke_count(const TrainSimConfig& cfg, Rng& rng) {
    double total = 0.0;
    double w = 1.0;
    for (int n = 1; n <= cfg.max_strokes; ++n, w *= cfg.decay) total += w;
    double u = rng.uniform() * total;
    w = 1.0;
    for (int n = 1; n < cfg.max_strokes; ++n, w *= cfg.decay) {
        if (u < w) return n;
        u -= w;
    }
    return cfg.max_strokes;
}

int sample_thickness(const TrainSimConfig& cfg, Rng& rng) {
    return rng.uniform_int(cfg.min_thickness, cfg.max_thickness);
}

int boundary_offset(int thickness) { return (thickness + 1) / 2 + 1; }
int protect_radius(int thickness) { return (thickness + 1) / 2; }

Stroke gen_bezier_scribble(const BinaryMask& region, int thickness, Rng& rng) {
    require_nonempty(region, "gen_bezier_scribble");
    const auto pixels = region.pixels();
    std::array<Vec2, 4> ctrl;
    for (auto& c : ctrl) {
        const Point p = random_pixel(pixels, rng);
        c = {static_cast<double>(p.x), static_cast<double>(p.y)};
    }
    Stroke s;
    s.thickness = thickness;
    s.points = to_pixel_path(sample_cubic_bezier(ctrl, 0.5));
    return s;
}

Stroke gen_axial_scribble(const BinaryMask& region, int thickness, Rng& rng) {
    require_nonempty(region, "gen_axial_scribble");
    const auto forest = remove_cycles(build_graph(medial_axis(region)));
    const int start = rng.uniform_int(0, static_cast<int>(forest.nodes.size()) - 1);
    const auto full = path_points(forest, path_to_farthest(forest, start));

    // Random sub-path covering at least half of the branch.
    const int n = static_cast<int>(full.size());
    const int len = rng.uniform_int((n + 1) / 2, n);
    const int first = rng.uniform_int(0, n - len);
    Stroke s;
    s.thickness = thickness;
    s.points.assign(full.begin() + first, full.begin() + first + len);
    return s;
}

std::vector<Point> trace_contour(const BinaryMask& m, Point start) {
    if (!m.get_or_false(start.x, start.y)) {
        throw std::invalid_argument("trace_contour: start pixel is not set");
    }
    const auto is_set = [&](Point p) { return m.get_or_false(p.x, p.y); };

    // Finds the next contour pixel around `c`, scanning clockwise after the
    // backtrack direction. Returns the new pixel and its backtrack direction.
    auto step = [&](Point c, int back) -> std::pair<Point, int> {
        for (int i = 1; i <= 8; ++i) {
            const int k = (back + i) % 8;
            const Point p{c.x + kRing[k].x, c.y + kRing[k].y};
            if (is_set(p)) {
                const int pk = (k + 7) % 8;
                const Point b{c.x + kRing[pk].x, c.y + kRing[pk].y};
                return {p, ring_index(p, b)};
            }
        }
        return {c, -1};
    };

    std::vector<Point> contour{start};
    auto [second, back] = step(start, 0);
    if (back < 0) return contour;  // isolated pixel

    Point cur = second;
    const std::size_t cap = 8 * m.count() + 16;
    while (contour.size() < cap) {
        contour.push_back(cur);
        auto [next, nb] = step(cur, back);
        // Stop once the walk would repeat its first move.
        if (cur == start && next == second) {
            contour.pop_back();
            break;
        }
        cur = next;
        back = nb;
    }
    return contour;
}

Stroke gen_boundary_scribble(const BinaryMask& region, int thickness, Rng& rng) {
    require_nonempty(region, "gen_boundary_scribble");
    const std::int64_t off = boundary_offset(thickness);
    const auto sq = squared_distance_transform(region);
    BinaryMask inner(region.width(), region.height());
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        inner.data()[i] = sq.values[i] >= off * off ? 1 : 0;
    }
    if (inner.none()) return gen_axial_scribble(region, thickness, rng);

    const BinaryMask comp = pick_component(inner, rng);
    const auto loop = trace_contour(comp, comp.pixels().front());
    const int n = static_cast<int>(loop.size());
    const int len = std::clamp(static_cast<int>(std::lround(rng.uniform(0.3, 1.0) * n)), 1, n);
    const int first = rng.uniform_int(0, n - 1);

    Stroke s;
    s.thickness = thickness;
    for (int i = 0; i < len; ++i) s.points.push_back(loop[static_cast<std::size_t>((first + i) % n)]);
    return s;
}

Stroke gen_linked_points_scribble(const BinaryMask& region, int thickness, Rng& rng) {
    require_nonempty(region, "gen_linked_points_scribble");
    const auto pixels = region.pixels();
    const int k = rng.uniform_int(2, 5);
    Stroke s;
    s.thickness = thickness;
    for (int i = 0; i < k; ++i) s.points.push_back(random_pixel(pixels, rng));
    return s;
}

Stroke gen_scribble(MetaSimulator kind, const BinaryMask& region, int thickness, Rng& rng) {
    switch (kind) {
        case MetaSimulator::bezier: return gen_bezier_scribble(region, thickness, rng);
        case MetaSimulator::axial: return gen_axial_scribble(region, thickness, rng);
        case MetaSimulator::boundary: return gen_boundary_scribble(region, thickness, rng);
        case MetaSimulator::linked_points: return gen_linked_points_scribble(region, thickness, rng);
    }
    throw std::invalid_argument("gen_scribble: unknown simulator");
}

BinaryMask permitted_region(const BinaryMask& target, BoundaryStrategy strategy, int thickness) {
    if (strategy == BoundaryStrategy::protect_boundary) {
        BinaryMask eroded = erode(target, protect_radius(thickness));
        if (eroded.any()) return eroded;
    }
    return target;
}

BinaryMask apply_boundary_strategy(const BinaryMask& raster, const BinaryMask& target,
                                   BoundaryStrategy strategy, int thickness) {
    if (!raster.same_shape(target)) {
        throw std::invalid_argument("apply_boundary_strategy: dimension mismatch");
    }
    switch (strategy) {
        case BoundaryStrategy::allow_error: return raster;
        case BoundaryStrategy::clean_boundary: return raster & target;
        case BoundaryStrategy::protect_boundary:
            return raster & permitted_region(target, strategy, thickness);
    }
    return raster;
}

PerturbParams sample_perturbation(const BinaryMask& gt, const PerturbConfig& cfg, Rng& rng,
                                  double scale) {
    const auto bbox = gt.bounding_box();
    if (!bbox) throw std::invalid_argument("sample_perturbation: empty ground truth");
    auto scaled = [&](int v) { return std::max(1, static_cast<int>(std::lround(v * scale))); };

    std::array<bool, 4> on{};
    for (auto& b : on) b = rng.bernoulli(cfg.op_probability);
    if (std::none_of(on.begin(), on.end(), [](bool b) { return b; })) on[rng.uniform_int(0, 3)] = true;

    PerturbParams p;
    if (on[0]) p.dilate_radius = scaled(rng.uniform_int(1, cfg.max_dilate_radius));
    if (on[1]) p.erode_radius = scaled(rng.uniform_int(1, cfg.max_erode_radius));
    if (on[2]) {
        const int s = std::max(0, static_cast<int>(std::lround(cfg.max_shift * scale)));
        p.dx = rng.uniform_int(-s, s);
        p.dy = rng.uniform_int(-s, s);
    }
    if (on[3]) {
        const auto pixels = gt.pixels();
        const double cap = std::max(
            1.0, cfg.max_erase_fraction * std::min(scale, 1.0) * bbox->width * bbox->height);
        const int k = rng.uniform_int(1, cfg.max_erase_count);
        for (int i = 0; i < k; ++i) {
            const Point c = random_pixel(pixels, rng);
            const int w = rng.uniform_int(1, std::max(1, std::min(bbox->width, static_cast<int>(cap))));
            const int h = rng.uniform_int(
                1, std::max(1, std::min(bbox->height, static_cast<int>(cap / w))));
            p.erase.push_back({c.x - w / 2, c.y - h / 2, w, h});
        }
    }
    return p;
}

BinaryMask apply_perturbation(const BinaryMask& gt, const PerturbParams& params) {
    BinaryMask out = gt;
    if (params.dilate_radius > 0) out = dilate(out, params.dilate_radius);
    if (params.erode_radius > 0) out = erode(out, params.erode_radius);
    if (params.dx != 0 || params.dy != 0) out = translate(out, params.dx, params.dy);
    for (const auto& b : params.erase) {
        const int x0 = std::max(b.x, 0), x1 = std::min(b.right(), out.width());
        const int y0 = std::max(b.y, 0), y1 = std::min(b.bottom(), out.height());
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) out.set(x, y, false);
        }
    }
    return out;
}

BinaryMask perturb_mask(const BinaryMask& gt, Rng& rng, const PerturbConfig& cfg) {
    return apply_perturbation(gt, sample_perturbation(gt, cfg, rng));
}

void draw_scribbles(const BinaryMask& positive_region, const BinaryMask& negative_region, int count,
                    const TrainSimConfig& cfg, Rng& rng, TrainingSample& sample) {
    const auto a = static_cast<double>(positive_region.count());
    const auto b = static_cast<double>(negative_region.count());
    if (count <= 0 || a + b == 0) return;

    int n_pos = static_cast<int>(std::lround(count * a / (a + b)));
    if (a >= b && n_pos == 0) n_pos = 1;
    if (b > a && n_pos == count) n_pos = count - 1;
    if (a == 0) n_pos = 0;
    if (b == 0) n_pos = count;

    for (int i = 0; i < count; ++i) {
        const Polarity pol = i < n_pos ? Polarity::positive : Polarity::negative;
        const BinaryMask& target = pol == Polarity::positive ? positive_region : negative_region;
        const int t = sample_thickness(cfg, rng);

        const double u = rng.uniform();
        MetaSimulator kind = MetaSimulator::bezier;
        if (u < cfg.proportion_axial) {
            kind = MetaSimulator::axial;
        } else if (u < cfg.proportion_axial + cfg.proportion_boundary) {
            kind = MetaSimulator::boundary;
        } else if (u < cfg.proportion_axial + cfg.proportion_boundary + cfg.proportion_linked) {
            kind = MetaSimulator::linked_points;
        }

        const BinaryMask region = pick_component(permitted_region(target, cfg.boundary_strategy, t), rng);
        Stroke stroke = gen_scribble(kind, region, t, rng);
        stroke.polarity = pol;
        const BinaryMask raster = apply_boundary_strategy(
            rasterize(stroke, target.width(), target.height()), target, cfg.boundary_strategy, t);
        sample.scribbles.add(raster, pol);
        sample.strokes.push_back(std::move(stroke));
        sample.generators.push_back(kind);
    }
}

PreviousMask simulate_previous_mask(const RgbImage& image, const BinaryMask& gt,
                                    const Segmenter* segmenter, const TrainSimConfig& cfg,
                                    Rng& rng) {
    BinaryMask empty(gt.width(), gt.height());
    if (rng.bernoulli(cfg.cold_start_probability)) return {empty, PreviousMaskSource::cold_start};
    const double total = cfg.pred_weight + cfg.perturb_weight;
    if (total <= 0.0) return {empty, PreviousMaskSource::cold_start};

    if (rng.uniform() * total < cfg.pred_weight) {
        if (segmenter == nullptr) {
            log_warning("iterative previous mask requested without a segmenter; using perturbation");
            return {perturb_mask(gt, rng, cfg.perturb), PreviousMaskSource::perturbation_fallback};
        }
        // First-round interaction: a few strokes on an empty mask, then predict.
        TrainingSample partial{nullptr, ScribbleMaps(gt.width(), gt.height()), empty, gt, {}, {}, {}};
        draw_scribbles(gt, ~gt, sample_stroke_count(cfg, rng), cfg, rng, partial);
        const auto request = make_request(image, partial.scribbles, empty);
        return {segmenter->predict(request), PreviousMaskSource::iterative};
    }
    return {perturb_mask(gt, rng, cfg.perturb), PreviousMaskSource::perturbation};
}

TrainingSample compose_training_sample(std::shared_ptr<const RgbImage> image, const BinaryMask& gt,
                                       const TrainSimConfig& cfg, Rng& rng,
                                       const Segmenter* segmenter) {
    cfg.validate();
    if (!image) throw std::invalid_argument("compose_training_sample: no image");
    if (image->width != gt.width() || image->height != gt.height()) {
        throw std::invalid_argument("compose_training_sample: image and gt differ in size");
    }
    if (gt.none()) throw std::invalid_argument("compose_training_sample: empty ground truth");

    const int w = gt.width(), h = gt.height();
    TrainingSample sample{image, ScribbleMaps(w, h), BinaryMask(w, h), gt, {}, {}, {}};

    for (int attempt = 0; attempt < cfg.max_resample; ++attempt) {
        auto prev = simulate_previous_mask(*image, gt, segmenter, cfg, rng);
        if (prev.mask.any() && prev.mask == gt) continue;  // nothing to correct
        sample.previous_mask = std::move(prev.mask);
        sample.previous_source = prev.source;
        break;
    }
    if (sample.previous_mask.none()) sample.previous_source = PreviousMaskSource::cold_start;

    const int count = sample_stroke_count(cfg, rng);
    if (sample.previous_mask.none()) {
        draw_scribbles(gt, ~gt, count, cfg, rng, sample);
    } else {
        draw_scribbles(gt - sample.previous_mask, sample.previous_mask - gt, count, cfg, rng, sample);
    }
    return sample;
}

}  // namespace scribble
