#include "plotforge/render/render.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "plotforge/render/rasterize.hpp"

namespace plotforge::render {

std::shared_ptr<const Tile> TileCache::find(const util::Hash128& key)
{
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) {
        return nullptr;
    }
    order_.splice(order_.begin(), order_, it->second.pos);
    return it->second.tile;
}

void TileCache::insert(const util::Hash128& key, std::shared_ptr<const Tile> tile)
{
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
        order_.splice(order_.begin(), order_, it->second.pos);
        it->second.tile = std::move(tile);
        return;
    }
    order_.push_front(key);
    map_.emplace(key, Entry{std::move(tile), order_.begin()});
    while (map_.size() > capacity_) {
        map_.erase(order_.back());
        order_.pop_back();
    }
}

std::size_t TileCache::size() const
{
    std::lock_guard lock(mu_);
    return map_.size();
}

void TileCache::clear()
{
    std::lock_guard lock(mu_);
    map_.clear();
    order_.clear();
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        for (unsigned t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    fn(i);
                }
            });
        }
    }
}

}  // namespace

RenderResult render_drawlist(const DrawList& list, const RenderOptions& options)
{
    RenderResult result;
    const std::size_t n = list.groups.size();
    std::vector<std::shared_ptr<const Tile>> tiles(n);
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < n; ++i) {
        if (options.cache != nullptr) {
            tiles[i] = options.cache->find(list.groups[i].hash);
        }
        if (tiles[i]) {
            ++result.stats.hits;
        } else {
            ++result.stats.misses;
            result.stats.missed.push_back(list.groups[i].component);
            todo.push_back(i);
        }
    }
    parallel_for(todo.size(), options.threads, [&](std::size_t k) {
        const auto& g = list.groups[todo[k]];
        auto tile = std::make_shared<Tile>(Tile{g.component, rasterize_group(g, list.width, list.height)});
        tiles[todo[k]] = tile;
        if (options.cache != nullptr) {
            options.cache->insert(g.hash, tile);
        }
    });

    const PixelBox full{0, 0, list.width, list.height};
    Surface canvas(full);
    draw_primitive(canvas, list.background, full);
    for (const auto& t : tiles) {
        canvas.composite(t->surface);
    }
    result.raster = canvas.to_raster();
    return result;
}

RenderResult render_scene(const scene::Scene& scene, int width, int height, const RenderOptions& options)
{
    return render_drawlist(emit_drawlist(scene, width, height), options);
}

}  // namespace plotforge::render
