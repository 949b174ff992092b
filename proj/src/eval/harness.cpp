#include "scribble/eval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <stdexcept>
#include <thread>

#include "scribble/detsim/auto_scribble.hpp"
#include "scribble/eval/zoom.hpp"
#include "scribble/seg/resample.hpp"
#include "scribble/train/scribble_maps.hpp"

namespace scribble {

void EvalConfig::validate() const {
    if (target_ious.empty()) throw std::invalid_argument("eval config: no target IoUs");
    for (double t : target_ious) {
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("eval config: targets must lie in (0, 1)");
    }
    if (max_interactions < 1) throw std::invalid_argument("eval config: max_interactions must be >= 1");
    if (eval_thickness < 1) throw std::invalid_argument("eval config: eval_thickness must be >= 1");
    if (zoom_ratio < 1.0) throw std::invalid_argument("eval config: zoom_ratio must be >= 1");
    if (model_input_size < 1) throw std::invalid_argument("eval config: model_input_size must be >= 1");
}

SegmenterFactory shared_segmenter(std::shared_ptr<const Segmenter> segmenter) {
    return [segmenter](const std::string&, const BinaryMask&) { return segmenter; };
}

SampleOutcome run_sample(const std::string& sample_id, const RgbImage& image, const BinaryMask& gt,
                         const Segmenter& segmenter, const EvalConfig& cfg) {
    if (image.width != gt.width() || image.height != gt.height()) {
        throw std::invalid_argument("sample " + sample_id + ": image and gt differ in size");
    }
    if (gt.none()) throw std::invalid_argument("sample " + sample_id + ": empty ground truth");

    AutoScribbleConfig sim;
    sim.thickness = cfg.eval_thickness;
    sim.graph_radius = cfg.graph_radius;
    sim.max_control_points = cfg.max_control_points;
    sim.whole_error_mask = cfg.whole_error_mask;

    SampleOutcome out{{sample_id, {}, std::vector<std::optional<int>>(cfg.target_ious.size()), {}},
                      BinaryMask(gt.width(), gt.height())};
    auto& trace = out.trace;
    BinaryMask& prev = out.final_mask;
    ScribbleMaps maps(gt.width(), gt.height());

    for (int round = 1; round <= cfg.max_interactions; ++round) {
        const auto scribble = simulate_interaction(gt, prev, sim);
        if (!scribble) break;  // already exact; every target was recorded
        maps.add(scribble->raster, scribble->polarity);

        BinaryMask pred = prev;
        try {
            const bool zoom = cfg.zoom_enabled && round >= 2;
            const auto request = build_request(image, maps, prev, zoom, cfg.zoom_ratio,
                                               segmenter.input_size());
            pred = paste_back(segmenter.predict(request), request.crop, prev);
        } catch (const std::exception& e) {
            trace.error = "round " + std::to_string(round) + ": " + e.what();
            std::fill(trace.rounds_to_target.begin(), trace.rounds_to_target.end(), std::nullopt);
            return out;
        }
        prev = std::move(pred);
        const double score = iou(prev, gt);
        trace.rounds.push_back({scribble->polarity, score});

        bool all = true;
        for (std::size_t k = 0; k < cfg.target_ious.size(); ++k) {
            if (!trace.rounds_to_target[k] && score >= cfg.target_ious[k]) trace.rounds_to_target[k] = round;
            all = all && trace.rounds_to_target[k].has_value();
        }
        if (all) break;
    }
    return out;
}

InteractionTrace evaluate_sample(const std::string& sample_id, const RgbImage& image,
                                 const BinaryMask& gt, const Segmenter& segmenter,
                                 const EvalConfig& cfg) {
    return run_sample(sample_id, image, gt, segmenter, cfg).trace;
}

void aggregate(const std::vector<InteractionTrace>& traces, const EvalConfig& cfg,
               DatasetMetrics& out) {
    if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
    out.noi.clear();
    out.nof.clear();
    for (std::size_t k = 0; k < cfg.target_ious.size(); ++k) {
        long long total = 0;
        int failures = 0;
        for (const auto& t : traces) {
            const auto& r = t.rounds_to_target.at(k);
            total += r ? std::min(*r, cfg.max_interactions) : cfg.max_interactions;
            failures += r ? 0 : 1;
        }
        out.noi[cfg.target_ious[k]] = static_cast<double>(total) / static_cast<double>(traces.size());
        out.nof[cfg.target_ious[k]] = failures;
    }
    out.sample_count = traces.size();
}

namespace {

struct Slot {
    std::optional<InteractionTrace> trace;
    std::optional<UnreadableSample> unreadable;
};

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

MetricsReport run_evaluation(const std::vector<DatasetSource>& datasets,
                             const SegmenterFactory& factory, const std::string& segmenter_name,
                             const EvalConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    MetricsReport report;
    report.config = cfg;
    report.segmenter = segmenter_name;
    report.timestamp = utc_timestamp();

    unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;

    for (const auto& ds : datasets) {
        if (ds.ids.empty()) throw std::invalid_argument("dataset '" + ds.name + "' is empty");
        std::vector<Slot> slots(ds.ids.size());
        std::atomic<std::size_t> next{0};

        auto work = [&] {
            for (std::size_t i = next++; i < slots.size(); i = next++) {
                std::optional<LoadedSample> sample;
                try {
                    sample.emplace(ds.load(i));
                } catch (const std::exception& e) {
                    slots[i].unreadable = UnreadableSample{ds.ids[i], e.what()};
                    continue;
                }
                try {
                    const auto seg = factory(ds.ids[i], sample->gt);
                    slots[i].trace = evaluate_sample(ds.ids[i], sample->image, sample->gt, *seg, cfg);
                } catch (const std::exception& e) {
                    // Bad sample contents (e.g. empty gt) count as unreadable.
                    slots[i].unreadable = UnreadableSample{ds.ids[i], e.what()};
                }
            }
        };
        const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(slots.size()));
        if (n <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }

        DatasetMetrics m;
        m.name = ds.name;
        for (auto& s : slots) {
            if (s.trace) m.traces.push_back(std::move(*s.trace));
            if (s.unreadable) m.unreadable.push_back(std::move(*s.unreadable));
        }
        if (!m.traces.empty()) aggregate(m.traces, cfg, m);
        report.datasets.push_back(std::move(m));
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace scribble
