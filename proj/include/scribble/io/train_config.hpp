#pragma once

#include <filesystem>
#include <istream>

#include <json.hpp>

#include "scribble/train/train_sim.hpp"

namespace scribble {

/// `key = value` lines; '#' starts a comment. Keys mirror TrainSimConfig
/// fields (perturbation limits as perturb.<field>), plus the shorthands
/// `thickness_range = 3,7` and `pred_perturb_ratio = 1:0.4`. Unknown keys and
/// bad values throw std::invalid_argument. The result is validated.
TrainSimConfig parse_train_config(std::istream& in, TrainSimConfig base = {});
TrainSimConfig load_train_config(const std::filesystem::path& path, TrainSimConfig base = {});

nlohmann::json train_config_to_json(const TrainSimConfig& cfg);

}  // namespace scribble
