#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "scribble/io/session.hpp"

namespace httplib {
class Server;
}

namespace scribble {

struct ServerOptions {
    std::optional<std::filesystem::path> static_dir;
    /// Segmenter behind the stateless POST /predict contract endpoint.
    std::string predict_segmenter = "geodesic";
};

/// {id, width, height, segmenter, has_gt, strokes, history_depth,
///  positive_pixels, negative_pixels, previous_mask, positive, negative, iou?}
nlohmann::json session_to_json(const Session& s);

/// HTTP front end of a SessionStore:
///   POST /sessions                      {image, gt?, segmenter} → {id}
///   POST /sessions/{id}/strokes         {stroke} or a bare stroke object
///   POST /sessions/{id}/predict         {zoom?} → {mask, iou?, warning}
///   POST /sessions/{id}/undo            → {undone}
///   POST /sessions/{id}/auto_scribble   {apply?} → {converged, stroke, polarity, raster}
///   GET  /sessions/{id}                 → session_to_json
///   DELETE /sessions/{id}
///   POST /predict                       external-segmenter contract
///   GET  /health
/// Errors answer {"error": message} with 400, 404 or 409.
class ScribbleServer {
public:
    ScribbleServer(SessionStore& store, ServerOptions opt = {});
    ~ScribbleServer();

    /// Binds to an ephemeral port and returns it (-1 on failure).
    int bind_to_any_port(const std::string& host = "127.0.0.1");
    bool bind(const std::string& host, int port);
    /// Blocks serving requests until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    void install_routes();

    SessionStore& store_;
    ServerOptions opt_;
    std::shared_ptr<const Segmenter> predict_segmenter_;
    std::unique_ptr<httplib::Server> http_;
};

}  // namespace scribble
