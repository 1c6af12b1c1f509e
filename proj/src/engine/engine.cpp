#include "plotforge/engine/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "plotforge/axes/transform.hpp"
#include "plotforge/scene/property.hpp"

namespace plotforge::engine {

std::string command_name(const Command& cmd)
{
    static const char* names[] = {"set_property", "set_data", "zoom_rect", "wheel",    "begin_batch", "end_batch",
                                  "reset_zoom",   "resize",   "click",     "snapshot", "tree"};
    return names[cmd.index()];
}

// --- Presenter --------------------------------------------------------------

bool Presenter::offer(Frame frame)
{
    std::lock_guard lock(mu_);
    if (current_ && frame.generation <= current_->generation) {
        ++discarded_;
        return false;
    }
    history_.push_back(frame.generation);
    current_ = std::move(frame);
    if (listener_) {
        listener_(*current_);
    }
    return true;
}

std::optional<Frame> Presenter::current() const
{
    std::lock_guard lock(mu_);
    return current_;
}

std::uint64_t Presenter::displayed_generation() const
{
    std::lock_guard lock(mu_);
    return current_ ? current_->generation : 0;
}

std::vector<std::uint64_t> Presenter::history() const
{
    std::lock_guard lock(mu_);
    return history_;
}

std::uint64_t Presenter::discarded() const
{
    std::lock_guard lock(mu_);
    return discarded_;
}

void Presenter::set_listener(Listener listener)
{
    std::lock_guard lock(mu_);
    listener_ = std::move(listener);
}

// --- helpers ----------------------------------------------------------------

namespace {

void collect_node_paths(const scene::PlotNode& node, const std::string& path, std::map<std::string, std::string>& out)
{
    out[node.id] = path;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        collect_node_paths(node.children[i], path + ".children[" + std::to_string(i) + "]", out);
    }
}

std::map<std::string, std::string> node_paths(const scene::Scene& sc)
{
    std::map<std::string, std::string> out;
    collect_node_paths(sc.root, "plots[0]", out);
    return out;
}

// Transforms the node's layers reference; all node transforms when it has
// no layers.
std::vector<std::size_t> zoom_targets(const scene::PlotNode& node)
{
    std::set<std::string> used;
    for (const auto& l : node.layers) {
        used.insert(l.x_transform_ref);
        used.insert(l.y_transform_ref);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < node.transforms.size(); ++i) {
        if (used.empty() || used.count(node.transforms[i].id)) {
            out.push_back(i);
        }
    }
    return out;
}

// Which device direction a transform runs along, from the node's axes and
// layers; nullopt when it is unused.
std::optional<bool> is_horizontal(const scene::PlotNode& node, const std::string& id)
{
    for (const auto& l : node.layers) {
        if (l.x_transform_ref == id) {
            return true;
        }
        if (l.y_transform_ref == id) {
            return false;
        }
    }
    for (const auto& a : node.axes) {
        if (a.transform_ref == id) {
            return a.side == scene::Side::Bottom || a.side == scene::Side::Top;
        }
    }
    return std::nullopt;
}

scene::Json range_json(const scene::Range& r)
{
    return scene::Json{{"lo", r.lo}, {"hi", r.hi}};
}

ErrorInfo info_from(const std::exception& e)
{
    if (const auto* pe = dynamic_cast<const Error*>(&e)) {
        return pe->info();
    }
    return ErrorInfo{ErrorCode::InvalidValue, "", e.what()};
}

}  // namespace

// --- Engine -----------------------------------------------------------------

Engine::Engine(scene::Scene initial, EngineOptions options)
    : options_(options), session_(std::move(initial)), width_(options.width), height_(options.height)
{
    layout::compute_layout(*session_.published(), width_, height_);  // rejects tiny canvases up front
    if (options_.on_frame) {
        presenter_.set_listener(options_.on_frame);
    }
    unsigned n = options_.workers != 0 ? options_.workers : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    for (unsigned i = 0; i < n; ++i) {
        workers_.emplace_back([this](std::stop_token st) { worker_loop(st); });
    }
    {
        std::lock_guard lock(mu_);
        schedule(session_.published(), nullptr);
    }
    dispatcher_ = std::jthread([this](std::stop_token st) { dispatch_loop(st); });
}

Engine::~Engine()
{
    close();
}

std::future<Reply> Engine::submit(Command cmd)
{
    std::promise<Reply> promise;
    auto fut = promise.get_future();
    std::lock_guard lock(mu_);
    if (closed_) {
        Reply r;
        r.error = ErrorInfo{ErrorCode::SessionClosed, "", "engine session is closed"};
        promise.set_value(std::move(r));
        return fut;
    }
    queue_.push_back(Pending{next_id_++, std::move(cmd), std::move(promise)});
    cv_.notify_one();
    return fut;
}

Reply Engine::call(Command cmd)
{
    return submit(std::move(cmd)).get();
}

void Engine::wait_idle()
{
    std::unique_lock lock(mu_);
    idle_cv_.wait(lock, [&] {
        if (!queue_.empty() || dispatching_) {
            return false;
        }
        std::lock_guard wl(work_mu_);
        return in_flight_ == 0;
    });
}

void Engine::close()
{
    {
        std::lock_guard lock(mu_);
        if (closed_ && !dispatcher_.joinable()) {
            return;
        }
        closed_ = true;
        cv_.notify_all();
    }
    if (dispatcher_.joinable()) {
        dispatcher_.request_stop();
        dispatcher_.join();
    }
    {
        std::lock_guard lock(work_mu_);
        workers_stop_ = true;
        work_cv_.notify_all();
    }
    for (auto& w : workers_) {
        if (w.joinable()) {
            w.join();
        }
    }
    workers_.clear();
}

EngineStats Engine::stats() const
{
    std::lock_guard lock(mu_);
    EngineStats s = stats_;
    s.frames_presented = presenter_.history().size();
    s.frames_discarded = presenter_.discarded();
    return s;
}

std::vector<AppliedCommand> Engine::applied_order() const
{
    std::lock_guard lock(mu_);
    return applied_;
}

void Engine::dispatch_loop(std::stop_token st)
{
    while (true) {
        Pending p;
        {
            std::unique_lock lock(mu_);
            cv_.wait(lock, [&] { return !queue_.empty() || closed_ || st.stop_requested(); });
            if (queue_.empty()) {
                return;  // closed and drained
            }
            p = std::move(queue_.front());
            queue_.pop_front();
            dispatching_ = true;
        }
        Reply reply = execute(p.id, p.cmd);
        {
            std::lock_guard lock(mu_);
            ++stats_.commands;
            applied_.push_back(AppliedCommand{p.id, std::move(p.cmd), reply.ok()});
            dispatching_ = false;
        }
        p.promise.set_value(std::move(reply));
        idle_cv_.notify_all();
    }
}

Reply Engine::execute(std::uint64_t id, const Command& cmd)
{
    Reply reply;
    reply.command_id = id;
    try {
        handle(cmd, reply);
    } catch (const std::exception& e) {
        reply.error = info_from(e);
        reply.generation.reset();
    }
    return reply;
}

void Engine::publish(const std::optional<scene::Publication>& pub, Reply& reply)
{
    if (!pub) {
        return;
    }
    std::lock_guard lock(mu_);
    ++stats_.publications;
    schedule(pub->snapshot, &reply);
}

// Caller holds mu_.
void Engine::schedule(scene::Snapshot snapshot, Reply* reply)
{
    std::lock_guard lock(work_mu_);
    const std::uint64_t g = ++latest_generation_;
    ++stats_.generations_scheduled;
    ++in_flight_;
    work_.push_back(RenderTask{g, std::move(snapshot), width_, height_});
    work_cv_.notify_one();
    if (reply != nullptr) {
        reply->generation = g;
    }
}

void Engine::worker_loop(std::stop_token st)
{
    while (true) {
        RenderTask task;
        bool skip = false;
        {
            std::unique_lock lock(work_mu_);
            work_cv_.wait(lock, [&] { return !work_.empty() || workers_stop_ || st.stop_requested(); });
            if (work_.empty()) {
                return;
            }
            task = std::move(work_.front());
            work_.pop_front();
            skip = options_.skip_stale && task.generation < latest_generation_;
        }
        if (!skip) {
            render::RenderOptions ro;
            ro.cache = options_.use_cache ? &cache_ : nullptr;
            ro.threads = 1;
            auto result = render::render_scene(*task.snapshot, task.width, task.height, ro);
            Frame f{task.generation, task.width, task.height, task.snapshot,
                    std::make_shared<const render::Raster>(std::move(result.raster)), std::move(result.stats)};
            presenter_.offer(std::move(f));
        }
        {
            std::lock_guard lock(mu_);
            if (skip) {
                ++stats_.renders_skipped;
            } else {
                ++stats_.renders_completed;
            }
            std::lock_guard wl(work_mu_);
            --in_flight_;
        }
        idle_cv_.notify_all();
    }
}

const layout::NodeGeometry* Engine::hit_node(const layout::GeometryMap& geo, double x, double y)
{
    // Children lie inside their parent's content and siblings are disjoint,
    // so the last pre-order hit is the deepest.
    const layout::NodeGeometry* hit = nullptr;
    for (const auto& n : geo.nodes) {
        if (n.content.contains(x, y)) {
            hit = &n;
        }
    }
    return hit;
}

std::vector<ClickEntry> Engine::click_to_data(const scene::Scene& sc, const layout::GeometryMap& geo, double x,
                                              double y)
{
    std::vector<ClickEntry> out;
    const auto* g = hit_node(geo, x, y);
    if (g == nullptr) {
        return out;
    }
    const auto* node = scene::find_node(sc.root, g->id);
    const double tx = (x - g->content.x) / g->content.w;
    const double ty = (g->content.bottom() - y) / g->content.h;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& l : node->layers) {
        if (!seen.insert({l.x_transform_ref, l.y_transform_ref}).second) {
            continue;
        }
        const auto* xt = node->find_transform(l.x_transform_ref);
        const auto* yt = node->find_transform(l.y_transform_ref);
        out.push_back(ClickEntry{node->id, xt->id, yt->id, axes::inverse(*xt, tx), axes::inverse(*yt, ty)});
    }
    return out;
}

// Fractions are in device terms (x from the left, y from the bottom of the
// content rect) and are converted to range-relative ones per transform.
void Engine::zoom(const layout::NodeGeometry& g, double fx0, double fx1, double fy0, double fy1, bool wheel,
                  int notches)
{
    const scene::Scene& sc = session_.working();
    const auto* node = scene::find_node(sc.root, g.id);
    const std::string base = node_paths(sc).at(g.id);
    std::vector<std::pair<scene::PropertyPath, scene::Json>> writes;
    ZoomEntry entry;
    for (std::size_t i : zoom_targets(*node)) {
        const auto& tr = node->transforms[i];
        const auto horizontal = is_horizontal(*node, tr.id);
        if (!horizontal) {
            continue;
        }
        double f0 = *horizontal ? fx0 : fy0;
        double f1 = *horizontal ? fx1 : fy1;
        if (tr.inverted) {
            std::tie(f0, f1) = std::pair{1.0 - f1, 1.0 - f0};
        }
        const scene::Range r = wheel ? axes::wheel_zoom(tr, f0, notches) : axes::zoom_to_fraction(tr, f0, f1);
        const std::string path = base + ".transforms[" + std::to_string(i) + "].range";
        writes.emplace_back(scene::PropertyPath::parse(path), range_json(r));
        entry.ranges.emplace_back(path, tr.range);
    }
    if (writes.empty()) {
        return;
    }
    auto pub = session_.apply_all(writes);
    zoom_stack_.push_back(std::move(entry));
    last_publication_ = std::move(pub);
}

void Engine::handle(const Command& cmd, Reply& reply)
{
    last_publication_.reset();
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, SetProperty>) {
                last_publication_ = session_.apply(scene::PropertyPath::parse(c.path), c.value);
            } else if constexpr (std::is_same_v<T, SetData>) {
                const auto base = scene::PropertyPath::parse(c.graph_path);
                last_publication_ = session_.apply_all({{base.child("x"), scene::Json(c.x)},
                                                        {base.child("y"), scene::Json(c.y)}});
            } else if constexpr (std::is_same_v<T, ZoomRect>) {
                const auto geo = layout::compute_layout(session_.working(), width_, height_);
                const double cx = (c.x0 + c.x1) / 2.0;
                const double cy = (c.y0 + c.y1) / 2.0;
                const auto* g = hit_node(geo, cx, cy);
                if (g == nullptr) {
                    throw Error(ErrorCode::RectOutsidePlot, "", "zoom rectangle center is outside every plot");
                }
                const auto& r = g->content;
                auto fx = [&](double x) { return std::clamp((x - r.x) / r.w, 0.0, 1.0); };
                auto fy = [&](double y) { return std::clamp((r.bottom() - y) / r.h, 0.0, 1.0); };
                const double ax = fx(c.x0);
                const double bx = fx(c.x1);
                const double ay = fy(c.y0);
                const double by = fy(c.y1);
                zoom(*g, std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by), false, 0);
            } else if constexpr (std::is_same_v<T, Wheel>) {
                const auto geo = layout::compute_layout(session_.working(), width_, height_);
                const auto* g = hit_node(geo, c.x, c.y);
                if (g == nullptr) {
                    throw Error(ErrorCode::RectOutsidePlot, "", "wheel position is outside every plot");
                }
                if (c.notches == 0) {
                    return;
                }
                const auto& r = g->content;
                const double ax = (c.x - r.x) / r.w;
                const double ay = (r.bottom() - c.y) / r.h;
                zoom(*g, ax, ax, ay, ay, true, c.notches);
            } else if constexpr (std::is_same_v<T, BeginBatch>) {
                session_.begin_batch();
            } else if constexpr (std::is_same_v<T, EndBatch>) {
                last_publication_ = session_.end_batch();
                if (!last_publication_ && resize_pending_ && session_.batch_depth() == 0) {
                    resize_pending_ = false;
                    std::lock_guard lock(mu_);
                    schedule(session_.published(), &reply);
                }
                if (last_publication_) {
                    resize_pending_ = false;
                }
            } else if constexpr (std::is_same_v<T, ResetZoom>) {
                if (zoom_stack_.empty()) {
                    return;
                }
                // Walk down the stack so each transform ends at its oldest saved range.
                std::map<std::string, scene::Range> restore;
                for (auto it = zoom_stack_.rbegin(); it != zoom_stack_.rend(); ++it) {
                    for (const auto& [path, range] : it->ranges) {
                        restore[path] = range;
                    }
                }
                std::vector<std::pair<scene::PropertyPath, scene::Json>> writes;
                for (const auto& [path, range] : restore) {
                    writes.emplace_back(scene::PropertyPath::parse(path), range_json(range));
                }
                last_publication_ = session_.apply_all(writes);
                zoom_stack_.clear();
            } else if constexpr (std::is_same_v<T, Resize>) {
                layout::compute_layout(session_.working(), c.width, c.height);
                {
                    std::lock_guard lock(mu_);
                    width_ = c.width;
                    height_ = c.height;
                }
                if (session_.batch_depth() == 0) {
                    std::lock_guard lock(mu_);
                    schedule(session_.published(), &reply);
                } else {
                    resize_pending_ = true;
                }
            } else if constexpr (std::is_same_v<T, ClickQuery>) {
                const auto geo = layout::compute_layout(session_.working(), width_, height_);
                reply.coords = click_to_data(session_.working(), geo, c.x, c.y);
            } else if constexpr (std::is_same_v<T, SnapshotQuery>) {
                reply.snapshot = session_.published();
            } else {
                reply.tree = scene::describe_tree(session_.working());
            }
        },
        cmd);
    publish(last_publication_, reply);
}

}  // namespace plotforge::engine
