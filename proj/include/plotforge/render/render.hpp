#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "plotforge/layout/layout.hpp"
#include "plotforge/render/drawlist.hpp"
#include "plotforge/render/surface.hpp"
#include "plotforge/scene/types.hpp"

namespace plotforge::render {

inline constexpr Rgba kBackground{255, 255, 255, 255};
inline constexpr Rgba kInk{0, 0, 0, 255};
inline constexpr Rgba kGridLine{200, 200, 200, 255};
inline const std::vector<double> kGridDash{2.0, 2.0};
inline constexpr int kCircleVertices = 16;

/// GRAY: t -> (t, t, t); HEAT: black -> red -> yellow -> white in equal thirds.
Rgba ramp_color(scene::RampName ramp, double t) noexcept;

/// Histogram bin edges: midpoints between samples, outer edges mirrored;
/// a single sample gets x +- 0.5.
std::vector<double> histogram_edges(const std::vector<double>& x);

/// Scene traversal without rasterization. Group order is the composition
/// order: all layers (nodes in pre-order, then z_order, then declaration
/// order), then annotation groups, then axes, then decorations.
DrawList emit_drawlist(const scene::Scene& scene, const layout::GeometryMap& geometry);
DrawList emit_drawlist(const scene::Scene& scene, int width, int height);

struct Tile {
    std::string component;
    Surface surface;
};

/// Thread-safe LRU of rendered tiles keyed by content hash.
class TileCache {
public:
    explicit TileCache(std::size_t capacity = 4096) : capacity_(capacity) {}

    std::shared_ptr<const Tile> find(const util::Hash128& key);
    void insert(const util::Hash128& key, std::shared_ptr<const Tile> tile);
    std::size_t size() const;
    void clear();

private:
    using Order = std::list<util::Hash128>;
    struct Entry {
        std::shared_ptr<const Tile> tile;
        Order::iterator pos;
    };

    mutable std::mutex mu_;
    std::size_t capacity_;
    Order order_;  // most recent first
    std::unordered_map<util::Hash128, Entry, util::Hash128Hasher> map_;
};

struct CacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::vector<std::string> missed;  // component ids, composition order
};

struct RenderOptions {
    TileCache* cache = nullptr;
    unsigned threads = 1;  // concurrent tile rasterization
};

struct RenderResult {
    Raster raster;
    CacheStats stats;
};

/// Tiled composition of a draw list; tiles come from the cache when their
/// hash is present.
RenderResult render_drawlist(const DrawList& list, const RenderOptions& options = {});

/// Layout, emission and tiled rendering. Propagates layout errors.
RenderResult render_scene(const scene::Scene& scene, int width, int height, const RenderOptions& options = {});

}  // namespace plotforge::render
