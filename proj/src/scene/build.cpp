#include "plotforge/scene/build.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "plotforge/error.hpp"
#include "plotforge/util/calendar.hpp"
#include "plotforge/util/number_format.hpp"

namespace plotforge::scene {

namespace {

std::string at(const std::string& path, std::string_view key)
{
    return path + "." + std::string(key);
}

std::string at(const std::string& path, std::string_view key, std::size_t i)
{
    return path + "." + std::string(key) + "[" + std::to_string(i) + "]";
}

void check_range(const Range& r, const std::string& path)
{
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
        throw Error(ErrorCode::InvalidRange, path, "range bounds must be finite");
    }
    if (!(r.lo < r.hi)) {
        throw Error(ErrorCode::InvalidRange, path, "range requires lo < hi (use 'inverted' to flip an axis)");
    }
}

void check_style(const Style& s, const std::string& path, bool line_required)
{
    if (s.line == LineType::None && s.symbol == SymbolType::None) {
        throw Error(ErrorCode::InvalidStyle, path, "line 'none' with symbol 'none' draws nothing");
    }
    if (line_required && s.line == LineType::None) {
        throw Error(ErrorCode::InvalidStyle, at(path, "line"), "reference lines need a visible line");
    }
    if (!(s.stroke_width > 0.0)) {
        throw Error(ErrorCode::InvalidValue, at(path, "stroke_width"), "stroke_width must be positive");
    }
    if (!(s.symbol_size > 0.0)) {
        throw Error(ErrorCode::InvalidValue, at(path, "symbol_size"), "symbol_size must be positive");
    }
    if (s.line == LineType::Dashed && s.dash_pattern.empty()) {
        throw Error(ErrorCode::InvalidValue, at(path, "dash_pattern"), "dashed line needs a dash pattern");
    }
    for (std::size_t i = 0; i < s.dash_pattern.size(); ++i) {
        if (!(s.dash_pattern[i] > 0.0) || !std::isfinite(s.dash_pattern[i])) {
            throw Error(ErrorCode::InvalidValue, at(path, "dash_pattern", i), "dash lengths must be positive");
        }
    }
}

void check_same_length(std::size_t expected, const std::optional<std::vector<double>>& values, std::string_view name,
                       const std::string& graph_path)
{
    if (!values) {
        return;
    }
    if (values->size() != expected) {
        throw Error(ErrorCode::ArrayMismatch, at(graph_path, name),
                    "x (length " + std::to_string(expected) + ") and " + std::string(name) + " (length " +
                        std::to_string(values->size()) + ") differ");
    }
    for (std::size_t i = 0; i < values->size(); ++i) {
        if ((*values)[i] < 0.0) {
            throw Error(ErrorCode::InvalidValue, at(graph_path, name, i), "error values must be nonnegative");
        }
    }
}

void check_same_shape(const Matrix& a, const Matrix& b, std::string_view name, const std::string& graph_path)
{
    if (a.rows != b.rows || a.cols != b.cols) {
        throw Error(ErrorCode::ArrayMismatch, at(graph_path, name),
                    "r is " + std::to_string(a.rows) + "x" + std::to_string(a.cols) + " but " + std::string(name) +
                        " is " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
    }
}

void check_unit_interval(const Matrix& m, std::string_view name, const std::string& graph_path)
{
    for (double v : m.values) {
        if (std::isfinite(v) && (v < 0.0 || v > 1.0)) {
            throw Error(ErrorCode::InvalidValue, at(graph_path, name), "rgb planes must lie in [0,1]");
        }
    }
}

void check_graph(const Graph& graph, const std::string& path)
{
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, XYGraph> || std::is_same_v<T, XYErrorGraph>) {
                if (g.x.size() != g.y.size()) {
                    throw Error(ErrorCode::ArrayMismatch, path,
                                "x (length " + std::to_string(g.x.size()) + ") and y (length " +
                                    std::to_string(g.y.size()) + ") differ");
                }
                check_style(g.style, at(path, "style"), false);
                if constexpr (std::is_same_v<T, XYErrorGraph>) {
                    check_same_length(g.x.size(), g.x_err_lo, "x_err_lo", path);
                    check_same_length(g.x.size(), g.x_err_hi, "x_err_hi", path);
                    check_same_length(g.x.size(), g.y_err_lo, "y_err_lo", path);
                    check_same_length(g.x.size(), g.y_err_hi, "y_err_hi", path);
                }
            } else if constexpr (std::is_same_v<T, GridGraph>) {
                check_range(g.x_extent, at(path, "x_extent"));
                check_range(g.y_extent, at(path, "y_extent"));
                if (g.values.rows == 0 || g.values.cols == 0) {
                    throw Error(ErrorCode::InvalidValue, at(path, "values"), "grid must not be empty");
                }
                if (g.norm.mode == GridNorm::Mode::Explicit) {
                    check_range(Range{g.norm.lo, g.norm.hi}, at(path, "norm"));
                }
            } else {
                check_range(g.x_extent, at(path, "x_extent"));
                check_range(g.y_extent, at(path, "y_extent"));
                check_same_shape(g.r, g.g, "g", path);
                check_same_shape(g.r, g.b, "b", path);
                check_unit_interval(g.r, "r", path);
                check_unit_interval(g.g, "g", path);
                check_unit_interval(g.b, "b", path);
            }
        },
        graph);
}

void check_tick_config(const TickConfig& tc, const std::string& path)
{
    if (const int* count = std::get_if<int>(&tc.major)) {
        if (*count < 2) {
            throw Error(ErrorCode::InvalidValue, at(at(path, "major"), "target_count"),
                        "target_count must be at least 2");
        }
        if (tc.explicit_labels) {
            throw Error(ErrorCode::ArrayMismatch, at(path, "explicit_labels"),
                        "explicit_labels require explicit_positions");
        }
    } else {
        const auto& pos = std::get<std::vector<double>>(tc.major);
        const std::string pp = at(at(path, "major"), "explicit_positions");
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (!std::isfinite(pos[i])) {
                throw Error(ErrorCode::InvalidValue, pp + "[" + std::to_string(i) + "]", "positions must be finite");
            }
            if (i > 0 && !(pos[i - 1] < pos[i])) {
                throw Error(ErrorCode::InvalidValue, pp + "[" + std::to_string(i) + "]",
                            "positions must be strictly increasing");
            }
        }
        if (tc.explicit_labels) {
            if (tc.explicit_labels->size() != pos.size()) {
                throw Error(ErrorCode::ArrayMismatch, at(path, "explicit_labels"),
                            "explicit_labels (length " + std::to_string(tc.explicit_labels->size()) +
                                ") and explicit_positions (length " + std::to_string(pos.size()) + ") differ");
            }
            if (tc.labels_visible) {
                for (std::size_t i = 0; i < tc.explicit_labels->size(); ++i) {
                    if ((*tc.explicit_labels)[i].empty()) {
                        throw Error(ErrorCode::InvalidValue, at(path, "explicit_labels", i),
                                    "visible labels must be nonempty");
                    }
                }
            }
        }
    }
    if (tc.minor_count && (*tc.minor_count < 0 || *tc.minor_count > 100)) {
        throw Error(ErrorCode::InvalidValue, at(path, "minor_count"), "minor_count must be in [0, 100]");
    }
    if (tc.label_format && !util::is_valid_pattern(*tc.label_format)) {
        throw Error(ErrorCode::BadPattern, at(path, "label_format"),
                    "label_format needs exactly one %f/%e/%g conversion: '" + *tc.label_format + "'");
    }
}

struct OrientationUse {
    bool as_x = false;
    bool as_y = false;
};

class NodeValidator {
public:
    explicit NodeValidator(std::set<std::string>& node_ids) : node_ids_(node_ids) {}

    void run(const PlotNode& node, const std::string& path)
    {
        if (node.id.empty() || node.id.find('/') != std::string::npos) {
            throw Error(ErrorCode::InvalidValue, at(path, "id"), "node id must be nonempty and free of '/'");
        }
        if (!node_ids_.insert(node.id).second) {
            throw Error(ErrorCode::DuplicateId, at(path, "id"), "node id '" + node.id + "' is used twice");
        }

        std::set<std::string> transform_ids;
        for (std::size_t i = 0; i < node.transforms.size(); ++i) {
            const auto& t = node.transforms[i];
            const std::string tp = at(path, "transforms", i);
            if (t.id.empty()) {
                throw Error(ErrorCode::InvalidValue, at(tp, "id"), "transform id must be nonempty");
            }
            if (!transform_ids.insert(t.id).second) {
                throw Error(ErrorCode::DuplicateId, at(tp, "id"), "transform id '" + t.id + "' is used twice");
            }
            check_range(t.range, at(tp, "range"));
            if (t.kind == AxisKind::Log && !(t.range.lo > 0.0 && t.range.hi > 0.0)) {
                throw Error(ErrorCode::LogNonpositive, at(tp, "range"), "log transform range must be positive");
            }
            if (t.kind == AxisKind::Date &&
                (t.range.lo < util::min_calendar_seconds() || t.range.hi > util::max_calendar_seconds())) {
                throw Error(ErrorCode::InvalidRange, at(tp, "range"), "date range outside years 1..9999");
            }
        }

        std::map<std::string, OrientationUse> uses;
        auto use = [&](const std::string& ref, bool x, const std::string& ref_path) {
            if (node.find_transform(ref) == nullptr) {
                throw Error(ErrorCode::UnresolvedRef, ref_path,
                            "transform '" + ref + "' is not declared on node '" + node.id + "'");
            }
            auto& u = uses[ref];
            (x ? u.as_x : u.as_y) = true;
            if (u.as_x && u.as_y) {
                throw Error(ErrorCode::OrientationConflict, ref_path,
                            "transform '" + ref + "' is used both horizontally and vertically");
            }
        };

        for (std::size_t i = 0; i < node.axes.size(); ++i) {
            const auto& a = node.axes[i];
            const std::string ap = at(path, "axes", i);
            use(a.transform_ref, is_horizontal(a.side), at(ap, "transform_ref"));
            check_tick_config(a.tick_config, at(ap, "tick_config"));
        }

        std::set<std::string> layer_ids;
        for (std::size_t i = 0; i < node.layers.size(); ++i) {
            const auto& l = node.layers[i];
            const std::string lp = at(path, "layers", i);
            if (l.id.empty() || l.id.find('/') != std::string::npos) {
                throw Error(ErrorCode::InvalidValue, at(lp, "id"), "layer id must be nonempty and free of '/'");
            }
            if (!layer_ids.insert(l.id).second) {
                throw Error(ErrorCode::DuplicateId, at(lp, "id"), "layer id '" + l.id + "' is used twice");
            }
            use(l.x_transform_ref, true, at(lp, "x_transform_ref"));
            use(l.y_transform_ref, false, at(lp, "y_transform_ref"));
            for (std::size_t g = 0; g < l.graphs.size(); ++g) {
                check_graph(l.graphs[g], at(lp, "graphs", g));
            }
        }

        for (std::size_t i = 0; i < node.annotations.size(); ++i) {
            const std::string anp = at(path, "annotations", i);
            std::visit(
                [&](const auto& a) {
                    using T = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<T, TextAnn>) {
                        if (a.frame == TextAnn::Frame::Data) {
                            use(a.x_transform_ref, true, at(anp, "x_transform_ref"));
                            use(a.y_transform_ref, false, at(anp, "y_transform_ref"));
                        }
                        if (!(a.font_size > 0.0)) {
                            throw Error(ErrorCode::InvalidValue, at(anp, "font_size"), "font_size must be positive");
                        }
                    } else if constexpr (std::is_same_v<T, HLineAnn>) {
                        use(a.y_transform_ref, false, at(anp, "y_transform_ref"));
                        check_style(a.style, at(anp, "style"), true);
                    } else if constexpr (std::is_same_v<T, VLineAnn>) {
                        use(a.x_transform_ref, true, at(anp, "x_transform_ref"));
                        check_style(a.style, at(anp, "style"), true);
                    } else {
                        use(a.x_transform_ref, true, at(anp, "x_transform_ref"));
                        use(a.y_transform_ref, false, at(anp, "y_transform_ref"));
                        if (!(a.x0 < a.x1) || !(a.y0 < a.y1)) {
                            throw Error(ErrorCode::InvalidRange, anp, "rectangle has zero width or height");
                        }
                    }
                },
                node.annotations[i]);
        }

        const auto& hints = node.layout_hints;
        if (hints.row < 0 || hints.col < 0 || hints.row > 64 || hints.col > 64) {
            throw Error(ErrorCode::InvalidValue, at(path, "layout_hints"), "row/col must be in [0, 64]");
        }
        if (!(hints.weight > 0.0) || !std::isfinite(hints.weight)) {
            throw Error(ErrorCode::InvalidValue, at(at(path, "layout_hints"), "weight"), "weight must be positive");
        }
        if (node.margins) {
            const auto& m = *node.margins;
            for (double v : {m.left, m.right, m.top, m.bottom}) {
                if (v < 0.0) {
                    throw Error(ErrorCode::InvalidValue, at(path, "margins"), "margins must be nonnegative");
                }
            }
        }

        std::set<std::pair<int, int>> cells;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& h = node.children[i].layout_hints;
            if (!cells.insert({h.row, h.col}).second) {
                throw Error(ErrorCode::InvalidValue, at(at(path, "children", i), "layout_hints"),
                            "grid cell (" + std::to_string(h.row) + ", " + std::to_string(h.col) +
                                ") is already occupied");
            }
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            run(node.children[i], at(path, "children", i));
        }
    }

private:
    std::set<std::string>& node_ids_;
};

std::string default_ref(const PlotNode& node, bool horizontal)
{
    if (!node.layers.empty()) {
        return horizontal ? node.layers.front().x_transform_ref : node.layers.front().y_transform_ref;
    }
    for (const auto& a : node.axes) {
        if (is_horizontal(a.side) == horizontal) {
            return a.transform_ref;
        }
    }
    return {};
}

}  // namespace

const AxisTransformDef* PlotNode::find_transform(std::string_view id) const noexcept
{
    for (const auto& t : transforms) {
        if (t.id == id) {
            return &t;
        }
    }
    return nullptr;
}

const PlotNode* find_node(const PlotNode& root, std::string_view id) noexcept
{
    if (root.id == id) {
        return &root;
    }
    for (const auto& child : root.children) {
        if (const PlotNode* hit = find_node(child, id)) {
            return hit;
        }
    }
    return nullptr;
}

void fill_defaults(PlotNode& node)
{
    const std::string dx = default_ref(node, true);
    const std::string dy = default_ref(node, false);
    for (auto& ann : node.annotations) {
        std::visit(
            [&](auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (requires { a.x_transform_ref; }) {
                    if (a.x_transform_ref.empty()) {
                        a.x_transform_ref = dx;
                    }
                }
                if constexpr (requires { a.y_transform_ref; }) {
                    if (a.y_transform_ref.empty()) {
                        a.y_transform_ref = dy;
                    }
                }
                if constexpr (std::is_same_v<T, RectAnn>) {
                    if (a.x0 > a.x1) {
                        std::swap(a.x0, a.x1);
                    }
                    if (a.y0 > a.y1) {
                        std::swap(a.y0, a.y1);
                    }
                }
            },
            ann);
    }
    for (auto& child : node.children) {
        fill_defaults(child);
    }
}

void validate(const Scene& scene)
{
    std::set<std::string> node_ids;
    NodeValidator(node_ids).run(scene.root, "plots[0]");
}

Scene build_scene(const Json& doc)
{
    Scene scene = scene_from_json(doc);
    fill_defaults(scene.root);
    validate(scene);
    return scene;
}

}  // namespace plotforge::scene
