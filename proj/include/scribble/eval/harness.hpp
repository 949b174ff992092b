#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/mask/image.hpp"
#include "scribble/seg/segmenter.hpp"
#include "scribble/train/stroke.hpp"

namespace scribble {

struct EvalConfig {
    std::vector<double> target_ious{0.85, 0.90};
    int max_interactions = 20;
    int eval_thickness = 3;
    double zoom_ratio = 1.4;
    int model_input_size = 384;
    bool zoom_enabled = false;
    double graph_radius = 1.5;
    std::size_t max_control_points = 8;
    bool whole_error_mask = false;
    /// Worker threads; 0 → hardware concurrency.
    unsigned workers = 1;

    void validate() const;
};

struct RoundRecord {
    Polarity polarity = Polarity::positive;
    double iou = 0.0;
    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct InteractionTrace {
    std::string sample_id;
    std::vector<RoundRecord> rounds;
    /// Per target, the 1-based round that first reached it; nullopt = failure.
    std::vector<std::optional<int>> rounds_to_target;
    /// Set when the segmenter threw; the sample then fails every target.
    std::optional<std::string> error;
    friend bool operator==(const InteractionTrace&, const InteractionTrace&) = default;
};

/// Segmenter used for one sample. Receives the sample's ground truth so
/// oracle-style segmenters can be built per sample; others ignore it.
using SegmenterFactory =
    std::function<std::shared_ptr<const Segmenter>(const std::string& sample_id, const BinaryMask& gt)>;

/// Shares one instance across all samples.
SegmenterFactory shared_segmenter(std::shared_ptr<const Segmenter> segmenter);

/// Runs the interaction loop on one sample: simulated scribble → request
/// (zoomed from the second round when enabled) → prediction → paste-back →
/// IoU at full resolution, until every target is reached or the cap.
/// Segmenter exceptions end the sample as a failure.
InteractionTrace evaluate_sample(const std::string& sample_id, const RgbImage& image,
                                 const BinaryMask& gt, const Segmenter& segmenter,
                                 const EvalConfig& cfg);

/// Final mask of the loop as well as its trace (used by zoom checks).
struct SampleOutcome {
    InteractionTrace trace;
    BinaryMask final_mask;
};
SampleOutcome run_sample(const std::string& sample_id, const RgbImage& image, const BinaryMask& gt,
                         const Segmenter& segmenter, const EvalConfig& cfg);

struct LoadedSample {
    RgbImage image;
    BinaryMask gt;
};

/// A named list of samples loaded on demand; `load` throws for unreadable ones.
struct DatasetSource {
    std::string name;
    std::vector<std::string> ids;
    std::function<LoadedSample(std::size_t)> load;
};

struct UnreadableSample {
    std::string id;
    std::string reason;
    friend bool operator==(const UnreadableSample&, const UnreadableSample&) = default;
};

struct DatasetMetrics {
    std::string name;
    std::map<double, double> noi;  // target → mean interactions (failures at the cap)
    std::map<double, int> nof;     // target → failures
    std::size_t sample_count = 0;  // evaluated samples (unreadable excluded)
    std::vector<UnreadableSample> unreadable;
    std::vector<InteractionTrace> traces;  // dataset order
    friend bool operator==(const DatasetMetrics&, const DatasetMetrics&) = default;
};

struct MetricsReport {
    EvalConfig config;
    std::string segmenter;
    std::vector<DatasetMetrics> datasets;
    // Run metadata, excluded from comparisons.
    std::string timestamp;
    double elapsed_seconds = 0.0;
};

/// NoI / NoF over traces. Throws when `traces` is empty.
void aggregate(const std::vector<InteractionTrace>& traces, const EvalConfig& cfg,
               DatasetMetrics& out);

/// Evaluates every dataset, processing samples on a worker pool and reducing
/// in dataset order, so the result does not depend on the worker count.
MetricsReport run_evaluation(const std::vector<DatasetSource>& datasets,
                             const SegmenterFactory& factory, const std::string& segmenter_name,
                             const EvalConfig& cfg);

}  // namespace scribble
