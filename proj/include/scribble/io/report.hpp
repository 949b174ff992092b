#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "scribble/eval/harness.hpp"

namespace scribble {

/// "0.85"-style key for a target IoU (two decimals unless more are needed).
std::string target_key(double target);

nlohmann::json config_to_json(const EvalConfig& cfg);
nlohmann::json trace_to_json(const InteractionTrace& trace, const EvalConfig& cfg);

/// {config, datasets: [{name, noi, nof, sample_count, unreadable, samples}], meta}
nlohmann::json report_to_json(const MetricsReport& report);

/// The report without run metadata, serialized; equal for identical runs.
std::string comparable_payload(const MetricsReport& report);
std::string comparable_payload(const nlohmann::json& report);

void write_report_json(const MetricsReport& report, const std::filesystem::path& path);
/// One row per evaluated sample: dataset, id, rounds, per-target NoI / reached
/// flags, final IoU, error.
void write_report_csv(const MetricsReport& report, const std::filesystem::path& path);

}  // namespace scribble
