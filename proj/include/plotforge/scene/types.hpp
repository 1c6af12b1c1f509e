#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Scene model: a recursive tree of plot nodes, each owning its axis
// transforms, axes, data layers and annotations. Snapshots are immutable;
// every mutation produces a new Scene (see property.hpp / session.hpp).
namespace plotforge::scene {

/// Closed interval in data units. lo < hi always; axis direction is
/// carried by AxisTransformDef::inverted.
struct Range {
    double lo = 0.0;
    double hi = 1.0;

    double span() const noexcept { return hi - lo; }
    friend bool operator==(const Range&, const Range&) = default;
};

struct Rgba {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    friend bool operator==(const Rgba&, const Rgba&) = default;
};

enum class AxisKind { Linear, Log, Date, Sexagesimal };
enum class SexaMode { Hms, Dms };

struct AxisTransformDef {
    std::string id;
    AxisKind kind = AxisKind::Linear;
    Range range;  // DATE: seconds since epoch; SEXAGESIMAL: decimal degrees
    bool inverted = false;
    SexaMode sexa_mode = SexaMode::Dms;

    friend bool operator==(const AxisTransformDef&, const AxisTransformDef&) = default;
};

enum class Side { Bottom, Top, Left, Right };
enum class TickDirection { In, Out };

inline bool is_horizontal(Side s) noexcept { return s == Side::Bottom || s == Side::Top; }

struct TickConfig {
    /// Either a target major count or explicit major positions (sorted).
    std::variant<int, std::vector<double>> major = 5;
    std::optional<int> minor_count;  // nullopt: automatic per axis kind
    std::optional<std::string> label_format;
    bool labels_visible = true;
    std::optional<std::vector<std::string>> explicit_labels;

    friend bool operator==(const TickConfig&, const TickConfig&) = default;
};

struct AxisDef {
    Side side = Side::Bottom;
    std::string transform_ref;
    bool visible = true;
    TickConfig tick_config;
    std::string axis_label;
    bool grid_lines = false;
    TickDirection tick_direction = TickDirection::In;

    friend bool operator==(const AxisDef&, const AxisDef&) = default;
};

enum class ChartType { Normal, Histogram };
enum class LineType { Solid, Dashed, None };
enum class SymbolType { None, Circle, Square, Cross, Triangle, Dot };

struct Style {
    ChartType chart_type = ChartType::Normal;
    LineType line = LineType::Solid;
    std::vector<double> dash_pattern{4.0, 4.0};
    SymbolType symbol = SymbolType::None;
    double symbol_size = 6.0;
    Rgba color{0, 0, 0, 255};
    double stroke_width = 1.0;

    friend bool operator==(const Style&, const Style&) = default;
};

/// Row-major 2D array; row 0 sits at the low end of the y extent.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct XYGraph {
    std::vector<double> x;
    std::vector<double> y;
    Style style;

    friend bool operator==(const XYGraph&, const XYGraph&) = default;
};

struct XYErrorGraph {
    std::vector<double> x;
    std::vector<double> y;
    std::optional<std::vector<double>> x_err_lo;
    std::optional<std::vector<double>> x_err_hi;
    std::optional<std::vector<double>> y_err_lo;
    std::optional<std::vector<double>> y_err_hi;
    Style style;

    friend bool operator==(const XYErrorGraph&, const XYErrorGraph&) = default;
};

enum class RampName { Gray, Heat };

struct GridNorm {
    enum class Mode { LinearMinMax, Explicit };
    Mode mode = Mode::LinearMinMax;
    double lo = 0.0;  // Explicit only
    double hi = 1.0;

    friend bool operator==(const GridNorm&, const GridNorm&) = default;
};

struct GridGraph {
    Matrix values;
    Range x_extent;
    Range y_extent;
    RampName ramp = RampName::Gray;
    GridNorm norm;

    friend bool operator==(const GridGraph&, const GridGraph&) = default;
};

struct RgbGraph {
    Matrix r;
    Matrix g;
    Matrix b;
    Range x_extent;
    Range y_extent;

    friend bool operator==(const RgbGraph&, const RgbGraph&) = default;
};

using Graph = std::variant<XYGraph, XYErrorGraph, GridGraph, RgbGraph>;

struct Layer {
    std::string id;
    std::string x_transform_ref;
    std::string y_transform_ref;
    std::vector<Graph> graphs;
    bool visible = true;
    int z_order = 0;

    friend bool operator==(const Layer&, const Layer&) = default;
};

struct TextAnn {
    enum class Frame { Data, Box };
    Frame frame = Frame::Data;
    double x = 0.0;
    double y = 0.0;
    std::string text;
    Rgba color{0, 0, 0, 255};
    double font_size = 10.0;
    std::string x_transform_ref;  // used when frame == Data
    std::string y_transform_ref;

    friend bool operator==(const TextAnn&, const TextAnn&) = default;
};

struct HLineAnn {
    double y = 0.0;
    std::string y_transform_ref;
    Style style;

    friend bool operator==(const HLineAnn&, const HLineAnn&) = default;
};

struct VLineAnn {
    double x = 0.0;
    std::string x_transform_ref;
    Style style;

    friend bool operator==(const VLineAnn&, const VLineAnn&) = default;
};

struct RectAnn {
    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;
    std::string x_transform_ref;
    std::string y_transform_ref;
    Rgba fill{0, 0, 255, 64};
    std::optional<Rgba> outline;

    friend bool operator==(const RectAnn&, const RectAnn&) = default;
};

using Annotation = std::variant<TextAnn, HLineAnn, VLineAnn, RectAnn>;

struct LayoutHints {
    int row = 0;
    int col = 0;
    double weight = 1.0;

    friend bool operator==(const LayoutHints&, const LayoutHints&) = default;
};

struct Margins {
    double left = 0.0;
    double right = 0.0;
    double top = 0.0;
    double bottom = 0.0;

    friend bool operator==(const Margins&, const Margins&) = default;
};

struct PlotNode {
    std::string id;
    std::string title;  // empty: no title band
    std::vector<AxisTransformDef> transforms;
    std::vector<AxisDef> axes;
    std::vector<Layer> layers;
    std::vector<Annotation> annotations;
    std::vector<PlotNode> children;
    LayoutHints layout_hints;
    std::optional<Margins> margins;

    const AxisTransformDef* find_transform(std::string_view id) const noexcept;
    friend bool operator==(const PlotNode&, const PlotNode&) = default;
};

struct Scene {
    PlotNode root;

    friend bool operator==(const Scene&, const Scene&) = default;
};

using Snapshot = std::shared_ptr<const Scene>;

/// Pre-order traversal helpers.
const PlotNode* find_node(const PlotNode& root, std::string_view id) noexcept;

template <typename Fn>
void for_each_node(const PlotNode& node, Fn&& fn)
{
    fn(node);
    for (const auto& child : node.children) {
        for_each_node(child, fn);
    }
}

}  // namespace plotforge::scene
