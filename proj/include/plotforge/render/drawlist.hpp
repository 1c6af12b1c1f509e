#pragma once

#include <string>
#include <variant>
#include <vector>

#include "plotforge/layout/layout.hpp"
#include "plotforge/scene/types.hpp"
#include "plotforge/util/hash.hpp"

namespace plotforge::render {

using scene::Rgba;

// Device coordinates put pixel centers on integers; y grows downward.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct PolylinePrim {
    std::vector<Point> points;
    Rgba color;
    double width = 1.0;
    std::vector<double> dash;  // on/off lengths; empty for solid
    bool closed = false;

    friend bool operator==(const PolylinePrim&, const PolylinePrim&) = default;
};

/// Axis-aligned fill of every pixel whose center lies in the rect.
struct RectPrim {
    layout::Rect rect;
    Rgba color;

    friend bool operator==(const RectPrim&, const RectPrim&) = default;
};

/// Filled polygon (symbols), even-odd rule.
struct PolygonPrim {
    std::vector<Point> points;
    Rgba color;

    friend bool operator==(const PolygonPrim&, const PolygonPrim&) = default;
};

/// Single-run text; x, y is the baseline start (see layout::TextItem).
struct TextPrim {
    std::string text;
    double x = 0.0;
    double y = 0.0;
    double size = 10.0;
    int rotation = 0;
    Rgba color;

    friend bool operator==(const TextPrim&, const TextPrim&) = default;
};

/// Cell image placed by device-space cell edges (monotone, either
/// direction). Pixels are sampled nearest-neighbour: a pixel takes the cell
/// its center falls in. cells[r * cols + c] spans x_edges[c..c+1],
/// y_edges[r..r+1].
struct ImagePrim {
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::vector<double> x_edges;
    std::vector<double> y_edges;
    std::vector<Rgba> cells;

    friend bool operator==(const ImagePrim&, const ImagePrim&) = default;
};

using Primitive = std::variant<PolylinePrim, RectPrim, PolygonPrim, TextPrim, ImagePrim>;

enum class GroupKind { Layer, Annotations, Axis, Decoration };

/// The primitives of one cacheable component, clipped to `clip`.
struct DrawGroup {
    std::string component;
    GroupKind kind = GroupKind::Layer;
    layout::Rect clip;
    util::Hash128 hash;
    std::vector<Primitive> prims;
};

struct DrawList {
    int width = 0;
    int height = 0;
    RectPrim background;
    std::vector<DrawGroup> groups;  // composition order

    /// Drawing primitives including the background.
    std::size_t primitive_count() const noexcept;
};

}  // namespace plotforge::render
