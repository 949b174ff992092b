#include "scribble/io/wire.hpp"

#include <stdexcept>
#include <string>

namespace scribble {

using nlohmann::json;

json stroke_to_json(const Stroke& stroke) {
    json pts = json::array();
    for (const auto& p : stroke.points) pts.push_back({p.x, p.y});
    return {{"points", std::move(pts)},
            {"thickness", stroke.thickness},
            {"polarity", std::string(to_string(stroke.polarity))}};
}

Stroke stroke_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("stroke must be an object");
    Stroke s;
    try {
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw std::invalid_argument("stroke points must be [x, y]");
            s.points.push_back({static_cast<int>(std::lround(p[0].get<double>())),
                                static_cast<int>(std::lround(p[1].get<double>()))});
        }
        s.thickness = j.value("thickness", 3);
        s.polarity = parse_polarity(j.at("polarity").get<std::string>());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed stroke: ") + e.what());
    }
    if (s.points.empty()) throw std::invalid_argument("stroke has no points");
    if (s.thickness < 1) throw std::invalid_argument("stroke thickness must be >= 1");
    return s;
}

}  // namespace scribble
