#pragma once

#include <json.hpp>

#include "scribble/train/stroke.hpp"

namespace scribble {

/// {points: [[x, y], ...], thickness, polarity: "pos" | "neg"}
nlohmann::json stroke_to_json(const Stroke& stroke);
/// Throws std::invalid_argument on malformed input; thickness defaults to 3.
Stroke stroke_from_json(const nlohmann::json& j);

}  // namespace scribble
