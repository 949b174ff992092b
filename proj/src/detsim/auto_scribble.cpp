#include "scribble/detsim/auto_scribble.hpp"

#include <stdexcept>

#include "scribble/detsim/skeleton_graph.hpp"
#include "scribble/mask/skeleton.hpp"
#include "scribble/train/curve.hpp"

namespace scribble {

Stroke fit_eval_stroke(std::span<const Point> path, int thickness, std::size_t max_control_points) {
    if (path.empty()) throw std::invalid_argument("fit_eval_stroke: empty path");
    const auto controls = subsample_evenly(path, max_control_points);
    std::vector<Vec2> pts;
    pts.reserve(controls.size());
    for (const auto& p : controls) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    Stroke stroke;
    stroke.points = to_pixel_path(sample_catmull_rom(pts, 0.5));
    stroke.thickness = thickness;
    return stroke;
}

BinaryMask rasterize_eval_stroke(std::span<const Point> path, int thickness,
                                 const BinaryMask& clip, std::size_t max_control_points) {
    const Stroke stroke = fit_eval_stroke(path, thickness, max_control_points);
    return rasterize(stroke, clip.width(), clip.height()) & clip;
}

std::optional<EvalScribble> simulate_interaction(const BinaryMask& gt, const BinaryMask& pred,
                                                 const AutoScribbleConfig& cfg) {
    if (!gt.same_shape(pred)) {
        throw std::invalid_argument("simulate_interaction: gt and prediction differ in size");
    }
    const auto regions = label_error_regions(gt, pred, cfg.connectivity);
    const int label = regions.largest();
    if (label == 0) return std::nullopt;

    const ErrorKind kind = regions.polarity[label - 1];
    BinaryMask region = regions.region(label);
    if (cfg.whole_error_mask) {
        for (std::size_t k = 0; k < regions.count(); ++k) {
            if (regions.polarity[k] == kind) region |= regions.region(static_cast<int>(k) + 1);
        }
    }

    std::vector<Point> path;
    if (region.count() <= 2) {
        path = region.pixels();
    } else {
        const auto forest = remove_cycles(build_graph(medial_axis(region), cfg.graph_radius));
        path = path_points(forest, longest_path(forest));
    }

    EvalScribble out{
        fit_eval_stroke(path, cfg.thickness, cfg.max_control_points),
        kind == ErrorKind::false_negative ? Polarity::positive : Polarity::negative,
        region,
        BinaryMask(gt.width(), gt.height()),
    };
    out.stroke.polarity = out.polarity;
    out.raster = rasterize(out.stroke, gt.width(), gt.height()) & region;
    return out;
}

}  // namespace scribble
