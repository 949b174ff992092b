#include "scribble/io/server.hpp"

#include <httplib.h>

#include "scribble/io/image_io.hpp"
#include "scribble/io/wire.hpp"

namespace scribble {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON body: ") + e.what());
    }
}

std::string b64png(const BinaryMask& m) { return base64_encode(encode_png(m)); }

// Wraps a handler so exceptions map to JSON error responses.
template <typename F>
httplib::Server::Handler guarded(F fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const SessionNotFound& e) {
            reply(res, 404, {{"error", e.what()}});
        } catch (const SessionConflict& e) {
            reply(res, 409, {{"error", e.what()}});
        } catch (const IoError& e) {
            reply(res, 400, {{"error", e.what()}, {"kind", std::string(to_string(e.kind()))}});
        } catch (const std::invalid_argument& e) {
            reply(res, 400, {{"error", e.what()}});
        } catch (const json::exception& e) {
            reply(res, 400, {{"error", e.what()}});
        } catch (const std::exception& e) {
            reply(res, 500, {{"error", e.what()}});
        }
    };
}

}  // namespace

json session_to_json(const Session& s) {
    json strokes = json::array();
    for (const auto& st : s.state.strokes) strokes.push_back(stroke_to_json(st));
    json out{{"id", s.id},
             {"width", s.image.width},
             {"height", s.image.height},
             {"segmenter", s.segmenter_name},
             {"has_gt", s.gt.has_value()},
             {"strokes", std::move(strokes)},
             {"history_depth", s.history.size()},
             {"positive_pixels", s.state.scribbles.positive().count()},
             {"negative_pixels", s.state.scribbles.negative().count()},
             {"previous_mask", b64png(s.state.previous_mask)},
             {"positive", b64png(s.state.scribbles.positive())},
             {"negative", b64png(s.state.scribbles.negative())}};
    if (s.gt) out["iou"] = iou(s.state.previous_mask, *s.gt);
    return out;
}

ScribbleServer::ScribbleServer(SessionStore& store, ServerOptions opt)
    : store_(store), opt_(std::move(opt)), http_(std::make_unique<httplib::Server>()) {
    predict_segmenter_ = make_segmenter(opt_.predict_segmenter);
    http_->set_payload_max_length(256u << 20);
    install_routes();
}

ScribbleServer::~ScribbleServer() { stop(); }

void ScribbleServer::install_routes() {
    auto& s = *http_;
    SessionStore& store = store_;

    s.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        reply(res, 200, {{"ok", true}});
    });

    s.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        if (!body.contains("image")) throw std::invalid_argument("missing 'image'");
        RgbImage image = decode_rgb(base64_decode(body["image"].get<std::string>()));
        std::optional<BinaryMask> gt;
        if (body.contains("gt") && !body["gt"].is_null()) {
            gt = decode_mask(base64_decode(body["gt"].get<std::string>()));
        }
        const std::string seg = body.value("segmenter", std::string("geodesic"));
        reply(res, 201, {{"id", store.create(std::move(image), std::move(gt), seg)}});
    }));

    s.Post(R"(/sessions/([^/]+)/strokes)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const Stroke stroke = stroke_from_json(body.contains("stroke") ? body["stroke"] : body);
        store.add_stroke(req.matches[1], stroke);
        reply(res, 200, {{"ok", true}});
    }));

    s.Post(R"(/sessions/([^/]+)/predict)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const auto r = store.predict(req.matches[1], body.value("zoom", false));
        json out{{"mask", b64png(r.mask)}, {"warning", r.warning}};
        if (r.iou) out["iou"] = *r.iou;
        if (!r.message.empty()) out["message"] = r.message;
        reply(res, 200, out);
    }));

    s.Post(R"(/sessions/([^/]+)/undo)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        reply(res, 200, {{"undone", store.undo(req.matches[1])}});
    }));

    s.Post(R"(/sessions/([^/]+)/auto_scribble)",
           guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const json body = parse_body(req);
               const auto r = store.auto_scribble(req.matches[1], body.value("apply", false));
               if (!r.scribble) {
                   reply(res, 200, {{"converged", true}, {"stroke", nullptr}, {"polarity", nullptr}});
                   return;
               }
               reply(res, 200, {{"converged", false},
                                {"stroke", stroke_to_json(r.scribble->stroke)},
                                {"polarity", std::string(to_string(r.scribble->polarity))},
                                {"raster", b64png(r.scribble->raster)},
                                {"applied", r.applied}});
           }));

    s.Get(R"(/sessions/([^/]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        json out;
        store.inspect(req.matches[1], [&](const Session& sess) { out = session_to_json(sess); });
        reply(res, 200, out);
    }));

    s.Delete(R"(/sessions/([^/]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        if (!store.remove(req.matches[1])) throw SessionNotFound(req.matches[1]);
        reply(res, 200, {{"ok", true}});
    }));

    const auto seg = predict_segmenter_;
    s.Post("/predict", guarded([seg](const httplib::Request& req, httplib::Response& res) {
        const auto request = request_from_json(parse_body(req));
        reply(res, 200, {{"mask", b64png(seg->predict(request))}});
    }));

    if (opt_.static_dir && !s.set_mount_point("/", opt_.static_dir->string())) {
        throw std::invalid_argument("static directory does not exist: " + opt_.static_dir->string());
    }
}

int ScribbleServer::bind_to_any_port(const std::string& host) { return http_->bind_to_any_port(host); }
bool ScribbleServer::bind(const std::string& host, int port) { return http_->bind_to_port(host, port); }
bool ScribbleServer::listen_after_bind() { return http_->listen_after_bind(); }
void ScribbleServer::stop() {
    if (http_) http_->stop();
}
void ScribbleServer::wait_until_ready() const { http_->wait_until_ready(); }

}  // namespace scribble
