#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scribble/detsim/auto_scribble.hpp"
#include "scribble/eval/harness.hpp"
#include "scribble/io/external.hpp"
#include "scribble/seg/segmenter.hpp"
#include "scribble/train/scribble_maps.hpp"

namespace scribble {

/// Mutex that admits waiters strictly in arrival order.
class FifoLock {
public:
    void lock();
    void unlock();

private:
    std::mutex m_;
    std::condition_variable cv_;
    std::uint64_t next_ = 0;
    std::uint64_t serving_ = 0;
};

struct InteractionState {
    ScribbleMaps scribbles;
    BinaryMask previous_mask;
    std::vector<Stroke> strokes;
    friend bool operator==(const InteractionState&, const InteractionState&) = default;
};

struct Session {
    Session(RgbImage img, std::optional<BinaryMask> gt_mask, std::string seg_name,
            std::shared_ptr<const Segmenter> seg)
        : image(std::move(img)),
          gt(std::move(gt_mask)),
          segmenter_name(std::move(seg_name)),
          segmenter(std::move(seg)),
          state{ScribbleMaps(image.width, image.height), BinaryMask(image.width, image.height), {}} {}

    std::string id;
    RgbImage image;
    std::optional<BinaryMask> gt;
    std::string segmenter_name;
    std::shared_ptr<const Segmenter> segmenter;
    InteractionState state;
    std::vector<InteractionState> history;  // snapshots before each interaction

    FifoLock lock;
    std::chrono::steady_clock::time_point last_used;
};

class SessionNotFound : public std::runtime_error {
public:
    explicit SessionNotFound(const std::string& id) : std::runtime_error("unknown session '" + id + "'") {}
};

/// Raised for requests that are well-formed but not allowed in the session's
/// current state (e.g. auto-scribble without a ground truth).
class SessionConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PredictResult {
    BinaryMask mask;
    std::optional<double> iou;
    bool warning = false;  // nothing to predict from
    std::string message;
};

struct AutoScribbleResult {
    std::optional<EvalScribble> scribble;  // nullopt → converged
    bool applied = false;
};

struct SessionStoreOptions {
    std::chrono::seconds idle_timeout{30 * 60};
    double zoom_ratio = 1.4;
    AutoScribbleConfig auto_scribble;
    SegmenterOptions segmenters;
};

/// Thread-safe registry of interactive sessions. Calls on different sessions
/// run concurrently; calls on one session are serialized in arrival order.
class SessionStore {
public:
    using Clock = std::chrono::steady_clock;

    explicit SessionStore(SessionStoreOptions opt = {}, std::function<Clock::time_point()> now = Clock::now);

    /// "oracle" needs a gt; other names go through make_segmenter.
    std::string create(RgbImage image, std::optional<BinaryMask> gt, const std::string& segmenter);

    /// Clamps points into the image, rasterizes and records the stroke.
    void add_stroke(const std::string& id, Stroke stroke);
    PredictResult predict(const std::string& id, bool zoom);
    /// Restores the state before the last interaction; false when there is none.
    bool undo(const std::string& id);
    AutoScribbleResult auto_scribble(const std::string& id, bool apply);
    bool remove(const std::string& id);

    /// Runs `fn` with exclusive access to the session.
    void inspect(const std::string& id, const std::function<void(const Session&)>& fn);

    /// Drops sessions idle for longer than the timeout; returns how many.
    std::size_t expire();
    std::size_t size() const;

private:
    std::shared_ptr<Session> get(const std::string& id);
    template <typename F>
    auto with_session(const std::string& id, F&& fn);

    SessionStoreOptions opt_;
    std::function<Clock::time_point()> now_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::string, std::shared_ptr<const Segmenter>> shared_segmenters_;
    std::uint64_t counter_ = 0;
};

}  // namespace scribble
