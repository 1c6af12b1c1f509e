#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plotforge/axes/ticks.hpp"
#include "plotforge/scene/change.hpp"
#include "plotforge/scene/types.hpp"

namespace plotforge::layout {

// Device pixels; y grows downward. A rect spans [x, x + w] x [y, y + h] in
// pixel-center coordinates, so the root cell of a W x H canvas is
// {0, 0, W - 1, H - 1}.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const noexcept { return x + w; }
    double bottom() const noexcept { return y + h; }
    bool contains(double px, double py) const noexcept
    {
        return px >= x && px <= right() && py >= y && py <= bottom();
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

inline double device_x(const Rect& content, double t) noexcept { return content.x + t * content.w; }
inline double device_y(const Rect& content, double t) noexcept { return content.y + content.h - t * content.h; }
inline double fraction_x(const Rect& content, double px) noexcept { return (px - content.x) / content.w; }
inline double fraction_y(const Rect& content, double py) noexcept { return (content.bottom() - py) / content.h; }

// Monospace font metrics, all proportional to the font size.
inline constexpr double kAdvance = 0.6;
inline constexpr double kLineHeight = 1.2;
inline constexpr double kAscent = 0.9;
inline constexpr double kSuperscriptScale = 0.7;
inline constexpr double kSuperscriptRise = 0.35;

inline constexpr double kTickLabelSize = 10.0;
inline constexpr double kAxisLabelSize = 12.0;
inline constexpr double kTitleSize = 14.0;

inline constexpr double kMajorTickLength = 6.0;
inline constexpr double kMinorTickLength = 3.0;
inline constexpr double kLabelGap = 2.0;
inline constexpr double kAxisPadding = 4.0;
inline constexpr double kTitlePadding = 4.0;

inline constexpr int kMinCanvas = 64;
inline constexpr double kMinContent = 16.0;

/// "10^k" tick labels split into base and exponent; nullopt otherwise.
std::optional<std::pair<std::string, std::string>> split_superscript(std::string_view label);

double text_width(std::string_view utf8, double size);
/// Width of a tick label, honouring the superscript split.
double tick_label_width(std::string_view label, double size = kTickLabelSize);

/// Thickness of the strip an axis needs outside the content rect:
/// tick zone + label band + axis-label band + padding, rounded up.
/// Zero for an invisible axis.
double measure_axis(const scene::AxisDef& axis, const axes::TickSet& ticks);

struct TextItem {
    std::string text;
    double x = 0.0;  // baseline start (rotation 0) or rotated equivalent
    double y = 0.0;
    double size = kTickLabelSize;
    int rotation = 0;  // 0 or 90 (counter-clockwise, reads bottom to top)
    bool superscript = false;

    friend bool operator==(const TextItem&, const TextItem&) = default;
};

struct TickMark {
    double value = 0.0;
    double pos = 0.0;  // device coordinate along the axis (integer)

    friend bool operator==(const TickMark&, const TickMark&) = default;
};

struct AxisGeometry {
    std::size_t index = 0;
    scene::Side side = scene::Side::Bottom;
    bool visible = true;
    Rect strip;         // band outside the content rect owned by this axis
    double line = 0.0;  // device y (horizontal) or x (vertical) of the axis line
    double span_lo = 0.0;
    double span_hi = 0.0;  // extent of the line along the axis
    int tick_sign = -1;    // device direction ticks point along the normal
    std::vector<TickMark> majors;
    std::vector<TickMark> minors;
    std::vector<TextItem> labels;
    std::optional<TextItem> axis_label;

    friend bool operator==(const AxisGeometry&, const AxisGeometry&) = default;
};

struct NodeGeometry {
    std::string id;
    Rect cell;
    Rect content;
    std::optional<TextItem> title;
    std::vector<AxisGeometry> axes;  // one per axis definition, in order

    friend bool operator==(const NodeGeometry&, const NodeGeometry&) = default;
};

struct GeometryMap {
    int width = 0;
    int height = 0;
    std::vector<NodeGeometry> nodes;  // pre-order
    std::map<std::string, std::size_t> index;

    const NodeGeometry* find(const std::string& node_id) const;
};

/// Throws Error(CANVAS_TOO_SMALL) if the canvas is under 64x64 or a content
/// rect ends up smaller than 16x16.
GeometryMap compute_layout(const scene::Scene& scene, int width, int height);

/// Adds every component of each node whose placement differs between the two
/// layouts (or that is new).
void escalate_for_layout(scene::ChangeRecord& change, const scene::Scene& after, const GeometryMap& before_geometry,
                         const GeometryMap& after_geometry);

}  // namespace plotforge::layout
