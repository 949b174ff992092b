#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/image.hpp"
#include "scribble/train/rng.hpp"
#include "scribble/train/scribble_maps.hpp"
#include "scribble/train/stroke.hpp"

namespace scribble {

class Segmenter;

enum class BoundaryStrategy { allow_error, clean_boundary, protect_boundary };

enum class MetaSimulator { bezier, axial, boundary, linked_points };

std::string_view to_string(BoundaryStrategy s);
BoundaryStrategy parse_boundary_strategy(std::string_view s);
std::string_view to_string(MetaSimulator s);

/// Magnitude limits for flawed-mask perturbation.
struct PerturbConfig {
    int max_dilate_radius = 5;
    int max_erode_radius = 5;
    int max_shift = 10;
    int max_erase_count = 3;
    double max_erase_fraction = 0.15;  // of the gt bounding-box area, per rectangle
    double op_probability = 0.5;       // chance each operation joins the subset
};

/// One concrete perturbation, applied in field order.
struct PerturbParams {
    int dilate_radius = 0;
    int erode_radius = 0;
    int dx = 0;
    int dy = 0;
    std::vector<Box> erase;
};

struct TrainSimConfig {
    int max_strokes = 16;
    double decay = 0.8;
    int min_thickness = 3;
    int max_thickness = 7;
    double proportion_axial = 0.2;
    double proportion_boundary = 0.2;
    double proportion_linked = 0.0;
    BoundaryStrategy boundary_strategy = BoundaryStrategy::protect_boundary;
    // Previous-mask source weights, "Pred : Perturb".
    double pred_weight = 1.0;
    double perturb_weight = 0.4;
    double cold_start_probability = 0.0;
    int max_resample = 5;
    PerturbConfig perturb;
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

int sample_stroke_count(const TrainSimConfig& cfg, Rng& rng);
int sample_thickness(const TrainSimConfig& cfg, Rng& rng);

/// Inward offset of boundary scribbles: ceil(thickness / 2) + 1.
int boundary_offset(int thickness);
/// Erosion radius used by protect_boundary: ceil(thickness / 2).
int protect_radius(int thickness);

// Meta-simulators. Each returns the stroke's vector path (thickness set,
// polarity left positive) for a nonempty region and throws for an empty one.
Stroke gen_bezier_scribble(const BinaryMask& region, int thickness, Rng& rng);
Stroke gen_axial_scribble(const BinaryMask& region, int thickness, Rng& rng);
/// Falls back to an axial scribble when nothing survives the inward offset.
Stroke gen_boundary_scribble(const BinaryMask& region, int thickness, Rng& rng);
/// Randomly sampled region pixels joined by straight segments.
Stroke gen_linked_points_scribble(const BinaryMask& region, int thickness, Rng& rng);
Stroke gen_scribble(MetaSimulator kind, const BinaryMask& region, int thickness, Rng& rng);

/// Outer contour of the component containing `start` (its raster-first
/// pixel), traced clockwise with Moore-neighbor tracing.
std::vector<Point> trace_contour(const BinaryMask& m, Point start);

/// Region strokes are generated in: the eroded target under protect_boundary
/// (when the erosion is nonempty), otherwise the target itself.
BinaryMask permitted_region(const BinaryMask& target, BoundaryStrategy strategy, int thickness);

/// allow_error: unchanged; clean_boundary: raster ∩ target;
/// protect_boundary: raster ∩ erode(target, protect_radius), or raster ∩ target
/// when that erosion is empty.
BinaryMask apply_boundary_strategy(const BinaryMask& raster, const BinaryMask& target,
                                   BoundaryStrategy strategy, int thickness);

PerturbParams sample_perturbation(const BinaryMask& gt, const PerturbConfig& cfg, Rng& rng,
                                  double scale = 1.0);
BinaryMask apply_perturbation(const BinaryMask& gt, const PerturbParams& params);
/// Random dilation / erosion / translation / local erasing of `gt`.
BinaryMask perturb_mask(const BinaryMask& gt, Rng& rng, const PerturbConfig& cfg = {});

enum class PreviousMaskSource { cold_start, iterative, perturbation, perturbation_fallback };
std::string_view to_string(PreviousMaskSource s);

struct PreviousMask {
    BinaryMask mask;
    PreviousMaskSource source;
};

/// Flawed previous mask: a cold start (empty), the segmenter's prediction after
/// a few simulated first-round strokes, or a perturbed gt, chosen by the
/// configured probabilities. Without a segmenter the iterative branch falls
/// back to perturbation and logs a warning.
PreviousMask simulate_previous_mask(const RgbImage& image, const BinaryMask& gt,
                                    const Segmenter* segmenter, const TrainSimConfig& cfg,
                                    Rng& rng);

struct TrainingSample {
    std::shared_ptr<const RgbImage> image;
    ScribbleMaps scribbles;
    BinaryMask previous_mask;
    BinaryMask ground_truth;
    std::vector<Stroke> strokes;  // vector form of every stroke, unclipped
    PreviousMaskSource previous_source = PreviousMaskSource::cold_start;
    std::vector<MetaSimulator> generators;  // one per stroke
};

/// Draws `count` strokes into the region, splitting strokes between the
/// positive and negative regions in proportion to their areas (at least one
/// to the larger).
void draw_scribbles(const BinaryMask& positive_region, const BinaryMask& negative_region, int count,
                    const TrainSimConfig& cfg, Rng& rng, TrainingSample& sample);

/// Full training sample: previous mask, then strokes in gt / background for a
/// cold start, or in the false-negative / false-positive regions otherwise.
TrainingSample compose_training_sample(std::shared_ptr<const RgbImage> image, const BinaryMask& gt,
                                       const TrainSimConfig& cfg, Rng& rng,
                                       const Segmenter* segmenter = nullptr);

}  // namespace scribble
