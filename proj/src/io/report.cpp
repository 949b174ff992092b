#include "scribble/io/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "scribble/io/image_io.hpp"

namespace scribble {

using nlohmann::json;

std::string target_key(double target) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", target);
    if (std::strtod(buf, nullptr) != target) std::snprintf(buf, sizeof buf, "%.6g", target);
    return buf;
}

json config_to_json(const EvalConfig& cfg) {
    return {{"target_ious", cfg.target_ious},
            {"max_interactions", cfg.max_interactions},
            {"eval_thickness", cfg.eval_thickness},
            {"zoom_enabled", cfg.zoom_enabled},
            {"zoom_ratio", cfg.zoom_ratio},
            {"model_input_size", cfg.model_input_size},
            {"graph_radius", cfg.graph_radius},
            {"max_control_points", cfg.max_control_points},
            {"whole_error_mask", cfg.whole_error_mask}};
}

json trace_to_json(const InteractionTrace& trace, const EvalConfig& cfg) {
    json rounds = json::array();
    for (const auto& r : trace.rounds) {
        rounds.push_back({{"polarity", std::string(to_string(r.polarity))}, {"iou", r.iou}});
    }
    json reached = json::object();
    for (std::size_t k = 0; k < cfg.target_ious.size(); ++k) {
        const auto& r = trace.rounds_to_target.at(k);
        reached[target_key(cfg.target_ious[k])] = r ? json(*r) : json(nullptr);
    }
    return {{"id", trace.sample_id},
            {"rounds", std::move(rounds)},
            {"rounds_to_target", std::move(reached)},
            {"error", trace.error ? json(*trace.error) : json(nullptr)}};
}

json report_to_json(const MetricsReport& report) {
    json config = config_to_json(report.config);
    config["segmenter"] = report.segmenter;

    json datasets = json::array();
    for (const auto& d : report.datasets) {
        json noi = json::object(), nof = json::object();
        for (const auto& [t, v] : d.noi) noi[target_key(t)] = v;
        for (const auto& [t, v] : d.nof) nof[target_key(t)] = v;
        json unreadable = json::array();
        for (const auto& u : d.unreadable) unreadable.push_back({{"id", u.id}, {"reason", u.reason}});
        json samples = json::array();
        for (const auto& t : d.traces) samples.push_back(trace_to_json(t, report.config));
        datasets.push_back({{"name", d.name},
                            {"noi", std::move(noi)},
                            {"nof", std::move(nof)},
                            {"sample_count", d.sample_count},
                            {"unreadable", std::move(unreadable)},
                            {"samples", std::move(samples)}});
    }
    return {{"config", std::move(config)},
            {"datasets", std::move(datasets)},
            {"meta", {{"timestamp", report.timestamp}, {"elapsed_seconds", report.elapsed_seconds}}}};
}

std::string comparable_payload(const json& report) {
    json copy = report;
    copy.erase("meta");
    return copy.dump();
}

std::string comparable_payload(const MetricsReport& report) {
    return comparable_payload(report_to_json(report));
}

void write_report_json(const MetricsReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << report_to_json(report).dump(2) << '\n';
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write report " + path.string());
}

void write_report_csv(const MetricsReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    const auto& targets = report.config.target_ious;
    out << "dataset,sample_id,rounds";
    for (double t : targets) out << ",noi_" << target_key(t) << ",reached_" << target_key(t);
    out << ",final_iou,error\n";
    for (const auto& d : report.datasets) {
        for (const auto& tr : d.traces) {
            out << d.name << ',' << tr.sample_id << ',' << tr.rounds.size();
            for (std::size_t k = 0; k < targets.size(); ++k) {
                const auto& r = tr.rounds_to_target[k];
                out << ',' << (r ? *r : report.config.max_interactions) << ',' << (r ? 1 : 0);
            }
            char iou[32];
            std::snprintf(iou, sizeof iou, "%.6f", tr.rounds.empty() ? 0.0 : tr.rounds.back().iou);
            std::string err = tr.error.value_or("");
            for (auto& c : err) {
                if (c == ',' || c == '\n' || c == '"') c = ' ';
            }
            out << ',' << iou << ',' << err << '\n';
        }
    }
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write CSV " + path.string());
}

}  // namespace scribble
