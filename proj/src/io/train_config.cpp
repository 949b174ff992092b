#include "scribble/io/train_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "scribble/io/image_io.hpp"

namespace scribble {
namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("not a number: '" + v + "'");
    return d;
}

int to_int(const std::string& v) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("not an integer: '" + v + "'");
    return out;
}

std::pair<std::string, std::string> split(const std::string& v, char sep) {
    const auto at = v.find(sep);
    if (at == std::string::npos) throw std::invalid_argument("expected 'a" + std::string(1, sep) + "b', got '" + v + "'");
    return {trim(v.substr(0, at)), trim(v.substr(at + 1))};
}

}  // namespace

TrainSimConfig parse_train_config(std::istream& in, TrainSimConfig cfg) {
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"max_strokes", [&](const std::string& v) { cfg.max_strokes = to_int(v); }},
        {"decay", [&](const std::string& v) { cfg.decay = to_double(v); }},
        {"min_thickness", [&](const std::string& v) { cfg.min_thickness = to_int(v); }},
        {"max_thickness", [&](const std::string& v) { cfg.max_thickness = to_int(v); }},
        {"thickness_range",
         [&](const std::string& v) {
             const auto [lo, hi] = split(v, ',');
             cfg.min_thickness = to_int(lo);
             cfg.max_thickness = to_int(hi);
         }},
        {"proportion_axial", [&](const std::string& v) { cfg.proportion_axial = to_double(v); }},
        {"proportion_boundary", [&](const std::string& v) { cfg.proportion_boundary = to_double(v); }},
        {"proportion_linked", [&](const std::string& v) { cfg.proportion_linked = to_double(v); }},
        {"boundary_strategy", [&](const std::string& v) { cfg.boundary_strategy = parse_boundary_strategy(v); }},
        {"pred_weight", [&](const std::string& v) { cfg.pred_weight = to_double(v); }},
        {"perturb_weight", [&](const std::string& v) { cfg.perturb_weight = to_double(v); }},
        {"pred_perturb_ratio",
         [&](const std::string& v) {
             const auto [a, b] = split(v, ':');
             cfg.pred_weight = to_double(a);
             cfg.perturb_weight = to_double(b);
         }},
        {"cold_start_probability", [&](const std::string& v) { cfg.cold_start_probability = to_double(v); }},
        {"max_resample", [&](const std::string& v) { cfg.max_resample = to_int(v); }},
        {"rng_seed", [&](const std::string& v) { cfg.rng_seed = std::stoull(v); }},
        {"perturb.max_dilate_radius", [&](const std::string& v) { cfg.perturb.max_dilate_radius = to_int(v); }},
        {"perturb.max_erode_radius", [&](const std::string& v) { cfg.perturb.max_erode_radius = to_int(v); }},
        {"perturb.max_shift", [&](const std::string& v) { cfg.perturb.max_shift = to_int(v); }},
        {"perturb.max_erase_count", [&](const std::string& v) { cfg.perturb.max_erase_count = to_int(v); }},
        {"perturb.max_erase_fraction", [&](const std::string& v) { cfg.perturb.max_erase_fraction = to_double(v); }},
        {"perturb.op_probability", [&](const std::string& v) { cfg.perturb.op_probability = to_double(v); }},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

TrainSimConfig load_train_config(const std::filesystem::path& path, TrainSimConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::missing_file, "cannot open config " + path.string());
    return parse_train_config(in, base);
}

nlohmann::json train_config_to_json(const TrainSimConfig& cfg) {
    return {{"max_strokes", cfg.max_strokes},
            {"decay", cfg.decay},
            {"thickness_range", {cfg.min_thickness, cfg.max_thickness}},
            {"proportion_axial", cfg.proportion_axial},
            {"proportion_boundary", cfg.proportion_boundary},
            {"proportion_linked", cfg.proportion_linked},
            {"boundary_strategy", std::string(to_string(cfg.boundary_strategy))},
            {"pred_perturb_ratio", {cfg.pred_weight, cfg.perturb_weight}},
            {"cold_start_probability", cfg.cold_start_probability},
            {"max_resample", cfg.max_resample},
            {"rng_seed", cfg.rng_seed},
            {"perturb",
             {{"max_dilate_radius", cfg.perturb.max_dilate_radius},
              {"max_erode_radius", cfg.perturb.max_erode_radius},
              {"max_shift", cfg.perturb.max_shift},
              {"max_erase_count", cfg.perturb.max_erase_count},
              {"max_erase_fraction", cfg.perturb.max_erase_fraction},
              {"op_probability", cfg.perturb.op_probability}}}};
}

}  // namespace scribble
