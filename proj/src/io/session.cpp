#include "scribble/io/session.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "scribble/eval/zoom.hpp"
#include "scribble/seg/oracle.hpp"
#include "scribble/seg/resample.hpp"
#include "scribble/train/rng.hpp"

namespace scribble {

void FifoLock::lock() {
    std::unique_lock lk(m_);
    const auto ticket = next_++;
    cv_.wait(lk, [&] { return serving_ == ticket; });
}

void FifoLock::unlock() {
    {
        std::lock_guard lk(m_);
        ++serving_;
    }
    cv_.notify_all();
}

SessionStore::SessionStore(SessionStoreOptions opt, std::function<Clock::time_point()> now)
    : opt_(std::move(opt)), now_(std::move(now)) {}

std::shared_ptr<Session> SessionStore::get(const std::string& id) {
    std::lock_guard lk(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw SessionNotFound(id);
    return it->second;
}

template <typename F>
auto SessionStore::with_session(const std::string& id, F&& fn) {
    expire();
    const auto s = get(id);
    std::lock_guard lk(s->lock);
    {
        std::lock_guard store(mutex_);
        s->last_used = now_();
    }
    return fn(*s);
}

std::string SessionStore::create(RgbImage image, std::optional<BinaryMask> gt,
                                  const std::string& segmenter) {
    if (image.width < 1 || image.height < 1) throw std::invalid_argument("session image is empty");
    if (gt && (gt->width() != image.width || gt->height() != image.height)) {
        throw std::invalid_argument("gt size differs from the image");
    }
    expire();

    std::shared_ptr<const Segmenter> seg;
    if (segmenter == "oracle" || segmenter.rfind("oracle:", 0) == 0) {
        if (!gt) throw std::invalid_argument("the oracle segmenter needs a gt mask");
        const double noise = segmenter == "oracle" ? 0.0 : std::stod(segmenter.substr(7));
        seg = std::make_shared<OracleSegmenter>(*gt, noise, opt_.segmenters.oracle_seed);
    } else {
        std::lock_guard lk(mutex_);
        auto& cached = shared_segmenters_[segmenter];
        if (!cached) cached = make_segmenter(segmenter, opt_.segmenters);
        seg = cached;
    }

    auto s = std::make_shared<Session>(std::move(image), std::move(gt), segmenter, std::move(seg));
    s->last_used = now_();

    std::lock_guard lk(mutex_);
    static thread_local std::mt19937_64 entropy{std::random_device{}()};
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(mix64(entropy() ^ ++counter_)));
    s->id = buf;
    sessions_[s->id] = s;
    return s->id;
}

void SessionStore::add_stroke(const std::string& id, Stroke stroke) {
    with_session(id, [&](Session& s) {
        if (stroke.points.empty()) throw std::invalid_argument("stroke has no points");
        if (stroke.thickness < 1) throw std::invalid_argument("stroke thickness must be >= 1");
        for (auto& p : stroke.points) {
            p.x = std::clamp(p.x, 0, s.image.width - 1);
            p.y = std::clamp(p.y, 0, s.image.height - 1);
        }
        s.history.push_back(s.state);
        s.state.scribbles.add(rasterize(stroke, s.image.width, s.image.height), stroke.polarity);
        s.state.strokes.push_back(std::move(stroke));
        return 0;
    });
}

PredictResult SessionStore::predict(const std::string& id, bool zoom) {
    return with_session(id, [&](Session& s) {
        PredictResult r{BinaryMask(s.image.width, s.image.height), std::nullopt, false, {}};
        auto& st = s.state;
        if (st.scribbles.empty() && st.previous_mask.none()) {
            r.warning = true;
            r.message = "no strokes and no previous mask; returning an empty mask";
        } else {
            const bool use_zoom = zoom && st.previous_mask.any();
            const auto request = build_request(s.image, st.scribbles, st.previous_mask, use_zoom,
                                               opt_.zoom_ratio, s.segmenter->input_size());
            st.previous_mask = paste_back(s.segmenter->predict(request), request.crop, st.previous_mask);
            r.mask = st.previous_mask;
        }
        if (s.gt) r.iou = iou(r.mask, *s.gt);
        return r;
    });
}

bool SessionStore::undo(const std::string& id) {
    return with_session(id, [&](Session& s) {
        if (s.history.empty()) return false;
        s.state = std::move(s.history.back());
        s.history.pop_back();
        return true;
    });
}

AutoScribbleResult SessionStore::auto_scribble(const std::string& id, bool apply) {
    return with_session(id, [&](Session& s) {
        if (!s.gt) throw SessionConflict("auto-scribble needs a session with a gt mask");
        AutoScribbleResult r;
        r.scribble = simulate_interaction(*s.gt, s.state.previous_mask, opt_.auto_scribble);
        if (apply && r.scribble) {
            s.history.push_back(s.state);
            s.state.scribbles.add(r.scribble->raster, r.scribble->polarity);
            s.state.strokes.push_back(r.scribble->stroke);
            r.applied = true;
        }
        return r;
    });
}

bool SessionStore::remove(const std::string& id) {
    std::lock_guard lk(mutex_);
    return sessions_.erase(id) > 0;
}

void SessionStore::inspect(const std::string& id, const std::function<void(const Session&)>& fn) {
    with_session(id, [&](Session& s) {
        fn(s);
        return 0;
    });
}

std::size_t SessionStore::expire() {
    const auto now = now_();
    std::vector<std::shared_ptr<Session>> doomed;
    std::lock_guard lk(mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        // Sessions in use are held elsewhere too; skip them.
        if (it->second.use_count() == 1 && now - it->second->last_used > opt_.idle_timeout) {
            doomed.push_back(std::move(it->second));
            it = sessions_.erase(it);
        } else {
            ++it;
        }
    }
    return doomed.size();
}

std::size_t SessionStore::size() const {
    std::lock_guard lk(mutex_);
    return sessions_.size();
}

}  // namespace scribble
