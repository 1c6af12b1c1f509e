#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "plotforge/error.hpp"
#include "plotforge/layout/layout.hpp"
#include "plotforge/render/render.hpp"
#include "plotforge/scene/session.hpp"

// Serialized command dispatcher over a SceneSession, with generational
// rendering on a worker pool and monotone presentation.
namespace plotforge::engine {

struct SetProperty {
    std::string path;
    scene::Json value;
};

/// Replaces the x and y arrays of one xy / xy_error graph, addressed by its
/// property path (e.g. "plots[0].layers[0].graphs[0]").
struct SetData {
    std::string graph_path;
    std::vector<double> x;
    std::vector<double> y;
};

/// Device-pixel rectangle; corners in any order.
struct ZoomRect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Positive notches zoom in around the device point.
struct Wheel {
    double x = 0, y = 0;
    int notches = 0;
};

struct BeginBatch {};
struct EndBatch {};
struct ResetZoom {};

struct Resize {
    int width = 0;
    int height = 0;
};

struct ClickQuery {
    double x = 0, y = 0;
};

struct SnapshotQuery {};
struct TreeQuery {};

using Command = std::variant<SetProperty, SetData, ZoomRect, Wheel, BeginBatch, EndBatch, ResetZoom, Resize,
                             ClickQuery, SnapshotQuery, TreeQuery>;

std::string command_name(const Command& cmd);

/// One readout per distinct (x, y) transform pair of the hit node's layers.
struct ClickEntry {
    std::string node;
    std::string x_transform;
    std::string y_transform;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const ClickEntry&, const ClickEntry&) = default;
};

struct Reply {
    std::uint64_t command_id = 0;
    std::optional<ErrorInfo> error;
    std::optional<std::uint64_t> generation;  // render scheduled by this command
    std::vector<ClickEntry> coords;           // ClickQuery
    scene::Snapshot snapshot;                 // SnapshotQuery
    scene::Json tree;                         // TreeQuery

    bool ok() const noexcept { return !error.has_value(); }
};

struct Frame {
    std::uint64_t generation = 0;
    int width = 0;
    int height = 0;
    scene::Snapshot snapshot;
    std::shared_ptr<const render::Raster> raster;
    render::CacheStats stats;
};

/// Keeps the highest completed generation. Offers of a generation at or
/// below the displayed one are dropped. The listener runs under the
/// presenter lock, so it observes frames in presentation order.
class Presenter {
public:
    using Listener = std::function<void(const Frame&)>;

    bool offer(Frame frame);
    std::optional<Frame> current() const;
    std::uint64_t displayed_generation() const;
    std::vector<std::uint64_t> history() const;
    std::uint64_t discarded() const;
    void set_listener(Listener listener);

private:
    mutable std::mutex mu_;
    std::optional<Frame> current_;
    std::vector<std::uint64_t> history_;
    std::uint64_t discarded_ = 0;
    Listener listener_;
};

struct EngineOptions {
    int width = 800;
    int height = 600;
    unsigned workers = 0;  // 0: hardware concurrency
    bool use_cache = true;
    /// Renders whose generation is already superseded when a worker picks
    /// them up are skipped; presentation would discard them anyway.
    bool skip_stale = true;
    /// Installed before generation 1 is scheduled.
    Presenter::Listener on_frame;
};

struct EngineStats {
    std::uint64_t commands = 0;
    std::uint64_t publications = 0;
    std::uint64_t generations_scheduled = 0;
    std::uint64_t renders_completed = 0;
    std::uint64_t renders_skipped = 0;
    std::uint64_t frames_presented = 0;
    std::uint64_t frames_discarded = 0;
};

struct AppliedCommand {
    std::uint64_t id = 0;
    Command command;
    bool ok = false;
};

/// Schedules generation 1 for the initial scene on construction. All
/// commands pass through one dispatcher thread in submission order;
/// renders run on a worker pool and reach the presenter tagged with
/// their generation.
class Engine {
public:
    Engine(scene::Scene initial, EngineOptions options = {});
    ~Engine();

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// After close() the future is ready with SESSION_CLOSED.
    std::future<Reply> submit(Command cmd);
    /// submit() and wait.
    Reply call(Command cmd);

    /// Blocks until no command is queued or running and no render is in
    /// flight.
    void wait_idle();
    /// Rejects further commands, drains the queue and joins all threads.
    void close();

    std::optional<Frame> displayed() const { return presenter_.current(); }
    std::vector<std::uint64_t> presented_generations() const { return presenter_.history(); }
    void set_frame_listener(Presenter::Listener listener) { presenter_.set_listener(std::move(listener)); }

    EngineStats stats() const;
    std::vector<AppliedCommand> applied_order() const;

    /// Stateless helpers shared with the protocol layer and tests.
    static std::vector<ClickEntry> click_to_data(const scene::Scene& sc, const layout::GeometryMap& geo, double x,
                                                 double y);
    /// Deepest node whose content rect contains the point, or nullptr.
    static const layout::NodeGeometry* hit_node(const layout::GeometryMap& geo, double x, double y);

private:
    struct Pending {
        std::uint64_t id;
        Command cmd;
        std::promise<Reply> promise;
    };
    struct ZoomEntry {
        std::vector<std::pair<std::string, scene::Range>> ranges;  // transform path -> range before the zoom
    };

    void dispatch_loop(std::stop_token st);
    void worker_loop(std::stop_token st);
    Reply execute(std::uint64_t id, const Command& cmd);
    void handle(const Command& cmd, Reply& reply);
    void publish(const std::optional<scene::Publication>& pub, Reply& reply);
    void schedule(scene::Snapshot snapshot, Reply* reply);
    void zoom(const layout::NodeGeometry& node, double fx0, double fx1, double fy0, double fy1, bool wheel,
              int notches);

    EngineOptions options_;
    scene::SceneSession session_;
    render::TileCache cache_;
    Presenter presenter_;
    std::vector<ZoomEntry> zoom_stack_;
    std::optional<scene::Publication> last_publication_;
    bool resize_pending_ = false;  // resized inside a batch
    int width_;
    int height_;

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::condition_variable idle_cv_;
    std::deque<Pending> queue_;
    bool closed_ = false;
    bool dispatching_ = false;
    std::uint64_t next_id_ = 1;
    std::vector<AppliedCommand> applied_;
    EngineStats stats_;

    struct RenderTask {
        std::uint64_t generation;
        scene::Snapshot snapshot;
        int width;
        int height;
    };
    std::mutex work_mu_;
    std::condition_variable work_cv_;
    std::deque<RenderTask> work_;
    std::uint64_t latest_generation_ = 0;
    std::uint64_t in_flight_ = 0;
    bool workers_stop_ = false;

    std::vector<std::jthread> workers_;
    std::jthread dispatcher_;
};

}  // namespace plotforge::engine
