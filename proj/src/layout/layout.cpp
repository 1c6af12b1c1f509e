#include "plotforge/layout/layout.hpp"

#include <algorithm>
#include <cmath>

#include "plotforge/axes/transform.hpp"
#include "plotforge/error.hpp"
#include "plotforge/util/utf8.hpp"

namespace plotforge::layout {

using scene::AxisDef;
using scene::PlotNode;
using scene::Side;

std::optional<std::pair<std::string, std::string>> split_superscript(std::string_view label)
{
    if (label.size() < 4 || label.substr(0, 3) != "10^") {
        return std::nullopt;
    }
    std::string_view exp = label.substr(3);
    std::size_t digits_from = exp.front() == '-' ? 1 : 0;
    if (digits_from >= exp.size()) {
        return std::nullopt;
    }
    for (std::size_t i = digits_from; i < exp.size(); ++i) {
        if (exp[i] < '0' || exp[i] > '9') {
            return std::nullopt;
        }
    }
    return std::make_pair(std::string("10"), std::string(exp));
}

double text_width(std::string_view utf8, double size)
{
    return static_cast<double>(util::utf8_length(utf8)) * kAdvance * size;
}

double tick_label_width(std::string_view label, double size)
{
    if (auto sup = split_superscript(label)) {
        return text_width(sup->first, size) + text_width(sup->second, size * kSuperscriptScale);
    }
    return text_width(label, size);
}

namespace {

double label_extent(const AxisDef& axis, const axes::TickSet& ticks)
{
    if (!axis.tick_config.labels_visible || ticks.major.empty()) {
        return 0.0;
    }
    if (is_horizontal(axis.side)) {
        return kLabelGap + kLineHeight * kTickLabelSize;
    }
    double widest = 0.0;
    for (const auto& t : ticks.major) {
        widest = std::max(widest, tick_label_width(t.label));
    }
    return kLabelGap + widest;
}

double axis_label_extent(const AxisDef& axis)
{
    return axis.axis_label.empty() ? 0.0 : kLabelGap + kLineHeight * kAxisLabelSize;
}

double title_band(const PlotNode& node)
{
    return node.title.empty() ? 0.0 : std::ceil(kLineHeight * kTitleSize) + kTitlePadding;
}

int outward_sign(Side s)
{
    return (s == Side::Bottom || s == Side::Right) ? 1 : -1;
}

void check_content(const Rect& r, const std::string& id)
{
    if (r.w + 1.0 < kMinContent || r.h + 1.0 < kMinContent) {
        throw Error(ErrorCode::CanvasTooSmall, id,
                    "content area of '" + id + "' would be smaller than 16x16 pixels");
    }
}

class Builder {
public:
    explicit Builder(GeometryMap& out) : out_(out) {}

    void place(const PlotNode& node, const Rect& cell)
    {
        std::vector<axes::TickSet> ticks(node.axes.size());
        std::vector<double> thickness(node.axes.size(), 0.0);
        double side_total[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < node.axes.size(); ++i) {
            const auto& a = node.axes[i];
            if (!a.visible) {
                continue;
            }
            if (const auto* tr = node.find_transform(a.transform_ref)) {
                ticks[i] = axes::generate_ticks(*tr, a.tick_config);
            }
            thickness[i] = measure_axis(a, ticks[i]);
            side_total[static_cast<int>(a.side)] += thickness[i];
        }
        if (node.margins) {
            side_total[static_cast<int>(Side::Bottom)] = std::ceil(node.margins->bottom);
            side_total[static_cast<int>(Side::Top)] = std::ceil(node.margins->top);
            side_total[static_cast<int>(Side::Left)] = std::ceil(node.margins->left);
            side_total[static_cast<int>(Side::Right)] = std::ceil(node.margins->right);
        }

        NodeGeometry g;
        g.id = node.id;
        g.cell = cell;
        const double tb = title_band(node);
        Rect content;
        content.x = cell.x + side_total[static_cast<int>(Side::Left)];
        content.y = cell.y + tb + side_total[static_cast<int>(Side::Top)];
        content.w = cell.w - side_total[static_cast<int>(Side::Left)] - side_total[static_cast<int>(Side::Right)];
        content.h = cell.h - tb - side_total[static_cast<int>(Side::Top)] - side_total[static_cast<int>(Side::Bottom)];
        check_content(content, node.id);
        g.content = content;

        if (tb > 0.0) {
            TextItem t;
            t.text = node.title;
            t.size = kTitleSize;
            t.x = std::round(cell.x + cell.w / 2.0 - text_width(node.title, kTitleSize) / 2.0);
            t.y = std::round(cell.y + kLabelGap + kAscent * kTitleSize);
            g.title = t;
        }

        double offset[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < node.axes.size(); ++i) {
            g.axes.push_back(place_axis(node, i, content, ticks[i], thickness[i], offset));
        }

        const std::size_t at = out_.nodes.size();
        out_.index[node.id] = at;
        out_.nodes.push_back(std::move(g));
        place_children(node, content);
    }

private:
    AxisGeometry place_axis(const PlotNode& node, std::size_t i, const Rect& content, const axes::TickSet& ticks,
                            double thickness, double* offset)
    {
        const AxisDef& a = node.axes[i];
        AxisGeometry ag;
        ag.index = i;
        ag.side = a.side;
        ag.visible = a.visible;
        const bool horiz = is_horizontal(a.side);
        const int out = outward_sign(a.side);
        double& off = offset[static_cast<int>(a.side)];
        switch (a.side) {
        case Side::Bottom: ag.line = content.bottom() + off; break;
        case Side::Top: ag.line = content.y - off; break;
        case Side::Left: ag.line = content.x - off; break;
        case Side::Right: ag.line = content.right() + off; break;
        }
        if (horiz) {
            ag.span_lo = content.x;
            ag.span_hi = content.right();
            ag.strip = Rect{content.x, out > 0 ? ag.line : ag.line - thickness, content.w, thickness};
        } else {
            ag.span_lo = content.y;
            ag.span_hi = content.bottom();
            ag.strip = Rect{out > 0 ? ag.line : ag.line - thickness, content.y, thickness, content.h};
        }
        ag.tick_sign = a.tick_direction == scene::TickDirection::In ? -out : out;
        if (!a.visible) {
            return ag;
        }
        off += thickness;

        const auto* tr = node.find_transform(a.transform_ref);
        if (tr == nullptr) {
            return ag;
        }
        auto pos_of = [&](double v) {
            const double t = axes::forward_or_nan(*tr, v);
            const double d = horiz ? device_x(content, t) : device_y(content, t);
            return static_cast<double>(std::lround(d));
        };
        for (const auto& t : ticks.major) {
            ag.majors.push_back({t.value, pos_of(t.value)});
        }
        for (double v : ticks.minor) {
            ag.minors.push_back({v, pos_of(v)});
        }

        const double lab_ext = label_extent(a, ticks);
        if (lab_ext > 0.0) {
            const double near = kMajorTickLength + kLabelGap;  // line to label box
            const bool log_axis = tr->kind == scene::AxisKind::Log;
            for (std::size_t k = 0; k < ticks.major.size(); ++k) {
                const auto& tick = ticks.major[k];
                TextItem item;
                item.text = tick.label;
                item.size = kTickLabelSize;
                item.superscript = log_axis && split_superscript(tick.label).has_value();
                const double w = tick_label_width(tick.label);
                const double pos = ag.majors[k].pos;
                const double box_h = kLineHeight * kTickLabelSize;
                const double asc = kAscent * kTickLabelSize;
                switch (a.side) {
                case Side::Bottom:
                    item.x = pos - w / 2.0;
                    item.y = ag.line + near + asc;
                    break;
                case Side::Top:
                    item.x = pos - w / 2.0;
                    item.y = ag.line - near - box_h + asc;
                    break;
                case Side::Left:
                    item.x = ag.line - near - w;
                    item.y = pos - box_h / 2.0 + asc;
                    break;
                case Side::Right:
                    item.x = ag.line + near;
                    item.y = pos - box_h / 2.0 + asc;
                    break;
                }
                item.x = std::round(item.x);
                item.y = std::round(item.y);
                ag.labels.push_back(std::move(item));
            }
        }

        if (!a.axis_label.empty()) {
            TextItem item;
            item.text = a.axis_label;
            item.size = kAxisLabelSize;
            const double w = text_width(a.axis_label, kAxisLabelSize);
            const double box = kLineHeight * kAxisLabelSize;
            const double asc = kAscent * kAxisLabelSize;
            const double near = kMajorTickLength + lab_ext + kLabelGap;
            switch (a.side) {
            case Side::Bottom:
                item.x = content.x + content.w / 2.0 - w / 2.0;
                item.y = ag.line + near + asc;
                break;
            case Side::Top:
                item.x = content.x + content.w / 2.0 - w / 2.0;
                item.y = ag.line - near - box + asc;
                break;
            case Side::Left:
                item.rotation = 90;
                item.x = ag.line - near - box + asc;
                item.y = content.y + content.h / 2.0 + w / 2.0;
                break;
            case Side::Right:
                item.rotation = 90;
                item.x = ag.line + near + asc;
                item.y = content.y + content.h / 2.0 + w / 2.0;
                break;
            }
            item.x = std::round(item.x);
            item.y = std::round(item.y);
            ag.axis_label = std::move(item);
        }
        return ag;
    }

    void place_children(const PlotNode& node, const Rect& content)
    {
        if (node.children.empty()) {
            return;
        }
        int rows = 0;
        int cols = 0;
        for (const auto& c : node.children) {
            rows = std::max(rows, c.layout_hints.row + 1);
            cols = std::max(cols, c.layout_hints.col + 1);
        }
        std::vector<double> col_w(static_cast<std::size_t>(cols), 0.0);
        std::vector<double> row_w(static_cast<std::size_t>(rows), 0.0);
        for (const auto& c : node.children) {
            auto& cw = col_w[static_cast<std::size_t>(c.layout_hints.col)];
            auto& rw = row_w[static_cast<std::size_t>(c.layout_hints.row)];
            cw = std::max(cw, c.layout_hints.weight);
            rw = std::max(rw, c.layout_hints.weight);
        }
        // Empty tracks still take a share.
        for (auto& w : col_w) {
            w = w > 0.0 ? w : 1.0;
        }
        for (auto& w : row_w) {
            w = w > 0.0 ? w : 1.0;
        }
        const auto xs = boundaries(col_w, content.w + 1.0);
        const auto ys = boundaries(row_w, content.h + 1.0);
        for (const auto& c : node.children) {
            const auto r = static_cast<std::size_t>(c.layout_hints.row);
            const auto k = static_cast<std::size_t>(c.layout_hints.col);
            Rect cell;
            cell.x = content.x + xs[k];
            cell.w = xs[k + 1] - xs[k] - 1.0;
            cell.y = content.y + ys[r];
            cell.h = ys[r + 1] - ys[r] - 1.0;
            if (cell.w < 0.0 || cell.h < 0.0) {
                throw Error(ErrorCode::CanvasTooSmall, c.id, "no room for subplot '" + c.id + "'");
            }
            place(c, cell);
        }
    }

    // Pixel-count boundaries of weighted tracks over `pixels` pixels.
    static std::vector<double> boundaries(const std::vector<double>& weights, double pixels)
    {
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        std::vector<double> out{0.0};
        double acc = 0.0;
        for (double w : weights) {
            acc += w;
            out.push_back(std::round(pixels * acc / total));
        }
        out.back() = pixels;
        return out;
    }

    GeometryMap& out_;
};

}  // namespace

double measure_axis(const AxisDef& axis, const axes::TickSet& ticks)
{
    if (!axis.visible) {
        return 0.0;
    }
    return std::ceil(kMajorTickLength + label_extent(axis, ticks) + axis_label_extent(axis) + kAxisPadding);
}

const NodeGeometry* GeometryMap::find(const std::string& node_id) const
{
    auto it = index.find(node_id);
    return it == index.end() ? nullptr : &nodes[it->second];
}

GeometryMap compute_layout(const scene::Scene& scene, int width, int height)
{
    if (width < kMinCanvas || height < kMinCanvas) {
        throw Error(ErrorCode::CanvasTooSmall, "canvas",
                    "canvas " + std::to_string(width) + "x" + std::to_string(height) + " is below 64x64");
    }
    GeometryMap map;
    map.width = width;
    map.height = height;
    Builder(map).place(scene.root, Rect{0.0, 0.0, width - 1.0, height - 1.0});
    return map;
}

void escalate_for_layout(scene::ChangeRecord& change, const scene::Scene& after, const GeometryMap& before_geometry,
                         const GeometryMap& after_geometry)
{
    scene::for_each_node(after.root, [&](const PlotNode& node) {
        const NodeGeometry* before = before_geometry.find(node.id);
        const NodeGeometry* now = after_geometry.find(node.id);
        if (now == nullptr) {
            return;
        }
        if (before == nullptr || before->cell != now->cell || before->content != now->content ||
            before->title != now->title || before->axes.size() != now->axes.size()) {
            for (auto& id : scene::node_components(node)) {
                change.affected.insert(std::move(id));
            }
            return;
        }
        for (std::size_t i = 0; i < now->axes.size(); ++i) {
            if (before->axes[i] != now->axes[i]) {
                change.affected.insert(scene::axis_component(node.id, i));
            }
        }
    });
}

}  // namespace plotforge::layout
