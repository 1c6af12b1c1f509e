#include <algorithm>
#include <cmath>
#include <numbers>

#include "plotforge/axes/transform.hpp"
#include "plotforge/render/render.hpp"
#include "plotforge/scene/change.hpp"
#include "plotforge/scene/serialize.hpp"

namespace plotforge::render {

using layout::Rect;
using scene::Json;
using scene::PlotNode;

Rgba ramp_color(scene::RampName ramp, double t) noexcept
{
    t = std::clamp(t, 0.0, 1.0);
    auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
    if (ramp == scene::RampName::Gray) {
        const auto v = byte(t);
        return Rgba{v, v, v, 255};
    }
    return Rgba{byte(3.0 * t), byte(3.0 * t - 1.0), byte(3.0 * t - 2.0), 255};
}

std::vector<double> histogram_edges(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    std::vector<double> e(n + 1);
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        e[0] = x[0] - 0.5;
        e[1] = x[0] + 0.5;
        return e;
    }
    for (std::size_t i = 1; i < n; ++i) {
        e[i] = (x[i - 1] + x[i]) / 2.0;
    }
    e[0] = x[0] - (x[1] - x[0]) / 2.0;
    e[n] = x[n - 1] + (x[n - 1] - x[n - 2]) / 2.0;
    return e;
}

namespace {

void hash_json(util::Hasher& h, const Json& j)
{
    h.add(static_cast<int>(j.type()));
    switch (j.type()) {
    case Json::value_t::object:
        h.add(static_cast<std::uint64_t>(j.size()));
        for (auto it = j.begin(); it != j.end(); ++it) {
            h.add(std::string_view(it.key()));
            hash_json(h, it.value());
        }
        break;
    case Json::value_t::array:
        h.add(static_cast<std::uint64_t>(j.size()));
        for (const auto& v : j) {
            hash_json(h, v);
        }
        break;
    case Json::value_t::string: h.add(std::string_view(j.get_ref<const std::string&>())); break;
    case Json::value_t::boolean: h.add(j.get<bool>()); break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::number_float: h.add(j.get<double>()); break;
    default: break;
    }
}

void hash_rect(util::Hasher& h, const Rect& r)
{
    h.add(r.x);
    h.add(r.y);
    h.add(r.w);
    h.add(r.h);
}

void hash_text(util::Hasher& h, const layout::TextItem& t)
{
    h.add(std::string_view(t.text));
    h.add(t.x);
    h.add(t.y);
    h.add(t.size);
    h.add(t.rotation);
    h.add(t.superscript);
}

void hash_axis(util::Hasher& h, const layout::AxisGeometry& a)
{
    h.add(a.side);
    h.add(a.visible);
    hash_rect(h, a.strip);
    h.add(a.line);
    h.add(a.span_lo);
    h.add(a.span_hi);
    h.add(a.tick_sign);
    for (const auto* marks : {&a.majors, &a.minors}) {
        h.add(static_cast<std::uint64_t>(marks->size()));
        for (const auto& m : *marks) {
            h.add(m.value);
            h.add(m.pos);
        }
    }
    h.add(static_cast<std::uint64_t>(a.labels.size()));
    for (const auto& t : a.labels) {
        hash_text(h, t);
    }
    h.add(a.axis_label.has_value());
    if (a.axis_label) {
        hash_text(h, *a.axis_label);
    }
}

const Json* transform_json(const Json& node_json, const std::string& id)
{
    for (const auto& t : node_json.at("transforms")) {
        if (t.at("id") == id) {
            return &t;
        }
    }
    return nullptr;
}

class Mapper {
public:
    Mapper(const scene::AxisTransformDef* xt, const scene::AxisTransformDef* yt, const Rect& content)
        : xt_(xt), yt_(yt), content_(content)
    {
    }

    double x(double v) const
    {
        return xt_ == nullptr ? std::nan("") : layout::device_x(content_, axes::forward_or_nan(*xt_, v));
    }
    double y(double v) const
    {
        return yt_ == nullptr ? std::nan("") : layout::device_y(content_, axes::forward_or_nan(*yt_, v));
    }
    Point map(double vx, double vy) const { return Point{x(vx), y(vy)}; }

private:
    const scene::AxisTransformDef* xt_;
    const scene::AxisTransformDef* yt_;
    Rect content_;
};

bool finite(Point p)
{
    return std::isfinite(p.x) && std::isfinite(p.y);
}

std::vector<double> dash_of(const scene::Style& s)
{
    return s.line == scene::LineType::Dashed ? s.dash_pattern : std::vector<double>{};
}

// Splits a point sequence at non-finite points into polylines.
void emit_runs(std::vector<Primitive>& out, const std::vector<Point>& pts, const scene::Style& style)
{
    if (style.line == scene::LineType::None) {
        return;
    }
    std::vector<Point> run;
    auto flush = [&] {
        if (run.size() >= 2) {
            out.push_back(PolylinePrim{std::move(run), style.color, style.stroke_width, dash_of(style), false});
        }
        run.clear();
    };
    for (const auto& p : pts) {
        if (finite(p)) {
            run.push_back(p);
        } else {
            flush();
        }
    }
    flush();
}

std::vector<Point> regular_polygon(Point c, double r, int n, double phase)
{
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = phase + 2.0 * std::numbers::pi * k / n;
        pts.push_back(Point{c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    return pts;
}

void emit_symbol(std::vector<Primitive>& out, Point c, const scene::Style& s)
{
    const double r = s.symbol_size / 2.0;
    switch (s.symbol) {
    case scene::SymbolType::None: return;
    case scene::SymbolType::Circle: out.push_back(PolygonPrim{regular_polygon(c, r, kCircleVertices, 0.0), s.color}); return;
    case scene::SymbolType::Square:
        out.push_back(PolygonPrim{{{c.x - r, c.y - r}, {c.x + r, c.y - r}, {c.x + r, c.y + r}, {c.x - r, c.y + r}}, s.color});
        return;
    case scene::SymbolType::Triangle:
        out.push_back(PolygonPrim{{{c.x, c.y - r}, {c.x + r, c.y + r}, {c.x - r, c.y + r}}, s.color});
        return;
    case scene::SymbolType::Cross:
        out.push_back(PolylinePrim{{{c.x - r, c.y}, {c.x + r, c.y}}, s.color, s.stroke_width, {}, false});
        out.push_back(PolylinePrim{{{c.x, c.y - r}, {c.x, c.y + r}}, s.color, s.stroke_width, {}, false});
        return;
    case scene::SymbolType::Dot:
        out.push_back(PolygonPrim{regular_polygon(c, std::max(1.0, s.stroke_width), kCircleVertices, 0.0), s.color});
        return;
    }
}

void emit_symbols(std::vector<Primitive>& out, const std::vector<Point>& pts, const scene::Style& s)
{
    if (s.symbol == scene::SymbolType::None) {
        return;
    }
    for (const auto& p : pts) {
        if (finite(p)) {
            emit_symbol(out, p, s);
        }
    }
}

void emit_xy(std::vector<Primitive>& out, const std::vector<double>& x, const std::vector<double>& y,
             const scene::Style& style, const Mapper& m)
{
    std::vector<Point> pts(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        pts[i] = m.map(x[i], y[i]);
    }
    if (style.chart_type == scene::ChartType::Histogram) {
        const auto edges = histogram_edges(x);
        std::vector<Point> steps;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double dy = m.y(y[i]);
            const Point a{m.x(edges[i]), dy};
            const Point b{m.x(edges[i + 1]), dy};
            if (!finite(a) || !finite(b)) {
                steps.push_back(Point{std::nan(""), std::nan("")});
                continue;
            }
            steps.push_back(a);
            steps.push_back(b);
        }
        emit_runs(out, steps, style);
    } else {
        emit_runs(out, pts, style);
    }
    emit_symbols(out, pts, style);
}

void emit_error_bars(std::vector<Primitive>& out, const scene::XYErrorGraph& g, const Mapper& m)
{
    const auto& s = g.style;
    const double cap = 2.0 * s.stroke_width;
    auto bar = [&](Point a, Point b, bool vertical) {
        if (!finite(a) || !finite(b)) {
            return;
        }
        out.push_back(PolylinePrim{{a, b}, s.color, s.stroke_width, {}, false});
        for (const Point& e : {a, b}) {
            if (vertical) {
                out.push_back(PolylinePrim{{{e.x - cap, e.y}, {e.x + cap, e.y}}, s.color, s.stroke_width, {}, false});
            } else {
                out.push_back(PolylinePrim{{{e.x, e.y - cap}, {e.x, e.y + cap}}, s.color, s.stroke_width, {}, false});
            }
        }
    };
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double x = g.x[i];
        const double y = g.y[i];
        if (!finite(m.map(x, y))) {
            continue;
        }
        if (g.y_err_lo || g.y_err_hi) {
            const double lo = y - (g.y_err_lo ? (*g.y_err_lo)[i] : 0.0);
            const double hi = y + (g.y_err_hi ? (*g.y_err_hi)[i] : 0.0);
            bar(m.map(x, lo), m.map(x, hi), true);
        }
        if (g.x_err_lo || g.x_err_hi) {
            const double lo = x - (g.x_err_lo ? (*g.x_err_lo)[i] : 0.0);
            const double hi = x + (g.x_err_hi ? (*g.x_err_hi)[i] : 0.0);
            bar(m.map(lo, y), m.map(hi, y), false);
        }
    }
}

std::vector<double> edges_of(const scene::Range& extent, std::size_t n, bool horizontal, const Mapper& m)
{
    std::vector<double> e(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double v = k == n ? extent.hi : extent.lo + extent.span() * static_cast<double>(k) / static_cast<double>(n);
        e[k] = horizontal ? m.x(v) : m.y(v);
    }
    return e;
}

void emit_grid(std::vector<Primitive>& out, const scene::GridGraph& g, const Mapper& m)
{
    ImagePrim im;
    im.cols = g.values.cols;
    im.rows = g.values.rows;
    im.x_edges = edges_of(g.x_extent, im.cols, true, m);
    im.y_edges = edges_of(g.y_extent, im.rows, false, m);
    double lo = g.norm.lo;
    double hi = g.norm.hi;
    if (g.norm.mode == scene::GridNorm::Mode::LinearMinMax) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (double v : g.values.values) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    im.cells.reserve(g.values.values.size());
    for (double v : g.values.values) {
        if (!std::isfinite(v)) {
            im.cells.push_back(Rgba{0, 0, 0, 0});
            continue;
        }
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        im.cells.push_back(ramp_color(g.ramp, t));
    }
    out.push_back(std::move(im));
}

void emit_rgb(std::vector<Primitive>& out, const scene::RgbGraph& g, const Mapper& m)
{
    ImagePrim im;
    im.cols = g.r.cols;
    im.rows = g.r.rows;
    im.x_edges = edges_of(g.x_extent, im.cols, true, m);
    im.y_edges = edges_of(g.y_extent, im.rows, false, m);
    auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
    for (std::size_t i = 0; i < g.r.values.size(); ++i) {
        const double r = g.r.values[i];
        const double gg = g.g.values[i];
        const double b = g.b.values[i];
        if (!std::isfinite(r) || !std::isfinite(gg) || !std::isfinite(b)) {
            im.cells.push_back(Rgba{0, 0, 0, 0});
        } else {
            im.cells.push_back(Rgba{byte(r), byte(gg), byte(b), 255});
        }
    }
    out.push_back(std::move(im));
}

void emit_text(std::vector<Primitive>& out, const layout::TextItem& t, Rgba color)
{
    if (t.superscript && t.rotation == 0) {
        if (auto parts = layout::split_superscript(t.text)) {
            out.push_back(TextPrim{parts->first, t.x, t.y, t.size, 0, color});
            out.push_back(TextPrim{parts->second, t.x + layout::text_width(parts->first, t.size),
                                   t.y - layout::kSuperscriptRise * t.size, t.size * layout::kSuperscriptScale, 0,
                                   color});
            return;
        }
    }
    out.push_back(TextPrim{t.text, t.x, t.y, t.size, t.rotation, color});
}

class Emitter {
public:
    Emitter(const layout::GeometryMap& geometry, DrawList& out) : geo_(geometry), out_(out) {}

    void run(const PlotNode& root)
    {
        scene::for_each_node(root, [&](const PlotNode& n) { layers(n); });
        scene::for_each_node(root, [&](const PlotNode& n) { annotations(n); });
        scene::for_each_node(root, [&](const PlotNode& n) { axes_of(n); });
        scene::for_each_node(root, [&](const PlotNode& n) { decoration(n); });
    }

private:
    const layout::NodeGeometry& geo(const PlotNode& n) const { return *geo_.find(n.id); }

    const Json& node_json(const PlotNode& n)
    {
        auto it = json_.find(n.id);
        if (it == json_.end()) {
            Json j = scene::to_json(n);
            j.erase("children");
            it = json_.emplace(n.id, std::move(j)).first;
        }
        return it->second;
    }

    void layers(const PlotNode& n)
    {
        const auto& g = geo(n);
        const Json& nj = node_json(n);
        std::vector<std::size_t> order(n.layers.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return n.layers[a].z_order < n.layers[b].z_order; });
        for (std::size_t i : order) {
            const auto& layer = n.layers[i];
            DrawGroup grp;
            grp.component = scene::layer_component(n.id, layer.id);
            grp.kind = GroupKind::Layer;
            grp.clip = g.content;

            util::Hasher h;
            h.add(std::string_view(grp.component));
            hash_json(h, nj.at("layers").at(i));
            for (const auto* ref : {&layer.x_transform_ref, &layer.y_transform_ref}) {
                if (const Json* t = transform_json(nj, *ref)) {
                    hash_json(h, *t);
                }
            }
            hash_rect(h, g.content);
            grp.hash = h.digest();

            if (layer.visible) {
                const Mapper m(n.find_transform(layer.x_transform_ref), n.find_transform(layer.y_transform_ref),
                               g.content);
                for (const auto& graph : layer.graphs) {
                    std::visit(
                        [&](const auto& gr) {
                            using T = std::decay_t<decltype(gr)>;
                            if constexpr (std::is_same_v<T, scene::XYGraph>) {
                                emit_xy(grp.prims, gr.x, gr.y, gr.style, m);
                            } else if constexpr (std::is_same_v<T, scene::XYErrorGraph>) {
                                emit_error_bars(grp.prims, gr, m);
                                emit_xy(grp.prims, gr.x, gr.y, gr.style, m);
                            } else if constexpr (std::is_same_v<T, scene::GridGraph>) {
                                emit_grid(grp.prims, gr, m);
                            } else {
                                emit_rgb(grp.prims, gr, m);
                            }
                        },
                        graph);
                }
            }
            out_.groups.push_back(std::move(grp));
        }
    }

    void annotations(const PlotNode& n)
    {
        const auto& g = geo(n);
        const Json& nj = node_json(n);
        DrawGroup grp;
        grp.component = scene::annotations_component(n.id);
        grp.kind = GroupKind::Annotations;
        grp.clip = g.content;
        util::Hasher h;
        h.add(std::string_view(grp.component));
        hash_json(h, nj.at("annotations"));
        // Only the transforms some annotation refers to.
        for (const auto& t : n.transforms) {
            const bool used = std::any_of(n.annotations.begin(), n.annotations.end(), [&](const auto& ann) {
                return std::visit(
                    [&](const auto& a) {
                        bool hit = false;
                        if constexpr (requires { a.x_transform_ref; }) {
                            hit = hit || a.x_transform_ref == t.id;
                        }
                        if constexpr (requires { a.y_transform_ref; }) {
                            hit = hit || a.y_transform_ref == t.id;
                        }
                        return hit;
                    },
                    ann);
            });
            if (used) {
                hash_json(h, *transform_json(nj, t.id));
            }
        }
        hash_rect(h, g.content);
        grp.hash = h.digest();

        const Rect& c = g.content;
        for (const auto& ann : n.annotations) {
            std::visit(
                [&](const auto& a) {
                    using T = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<T, scene::TextAnn>) {
                        Point p;
                        if (a.frame == scene::TextAnn::Frame::Box) {
                            p = Point{c.x + a.x * c.w, c.bottom() - a.y * c.h};
                        } else {
                            const Mapper m(n.find_transform(a.x_transform_ref), n.find_transform(a.y_transform_ref), c);
                            p = m.map(a.x, a.y);
                        }
                        if (finite(p)) {
                            grp.prims.push_back(TextPrim{a.text, p.x, p.y, a.font_size, 0, a.color});
                        }
                    } else if constexpr (std::is_same_v<T, scene::HLineAnn>) {
                        const Mapper m(nullptr, n.find_transform(a.y_transform_ref), c);
                        const double y = m.y(a.y);
                        if (std::isfinite(y) && a.style.line != scene::LineType::None) {
                            grp.prims.push_back(PolylinePrim{{{c.x, y}, {c.right(), y}}, a.style.color,
                                                             a.style.stroke_width, dash_of(a.style), false});
                        }
                    } else if constexpr (std::is_same_v<T, scene::VLineAnn>) {
                        const Mapper m(n.find_transform(a.x_transform_ref), nullptr, c);
                        const double x = m.x(a.x);
                        if (std::isfinite(x) && a.style.line != scene::LineType::None) {
                            grp.prims.push_back(PolylinePrim{{{x, c.y}, {x, c.bottom()}}, a.style.color,
                                                             a.style.stroke_width, dash_of(a.style), false});
                        }
                    } else {
                        const Mapper m(n.find_transform(a.x_transform_ref), n.find_transform(a.y_transform_ref), c);
                        const Point p0 = m.map(a.x0, a.y0);
                        const Point p1 = m.map(a.x1, a.y1);
                        if (finite(p0) && finite(p1)) {
                            const double x0 = std::min(p0.x, p1.x);
                            const double x1 = std::max(p0.x, p1.x);
                            const double y0 = std::min(p0.y, p1.y);
                            const double y1 = std::max(p0.y, p1.y);
                            grp.prims.push_back(RectPrim{Rect{x0, y0, x1 - x0, y1 - y0}, a.fill});
                            if (a.outline) {
                                grp.prims.push_back(
                                    PolylinePrim{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, *a.outline, 1.0, {}, true});
                            }
                        }
                    }
                },
                ann);
        }
        out_.groups.push_back(std::move(grp));
    }

    void axes_of(const PlotNode& n)
    {
        const auto& g = geo(n);
        const Json& nj = node_json(n);
        for (std::size_t i = 0; i < n.axes.size(); ++i) {
            const auto& def = n.axes[i];
            const auto& ag = g.axes[i];
            DrawGroup grp;
            grp.component = scene::axis_component(n.id, i);
            grp.kind = GroupKind::Axis;
            grp.clip = g.cell;
            util::Hasher h;
            h.add(std::string_view(grp.component));
            hash_json(h, nj.at("axes").at(i));
            if (const Json* t = transform_json(nj, def.transform_ref)) {
                hash_json(h, *t);
            }
            hash_axis(h, ag);
            hash_rect(h, g.content);
            hash_rect(h, g.cell);
            grp.hash = h.digest();

            if (ag.visible) {
                const bool horiz = scene::is_horizontal(def.side);
                const Rect& c = g.content;
                if (def.grid_lines) {
                    for (const auto& m : ag.majors) {
                        PolylinePrim line;
                        line.points = horiz ? std::vector<Point>{{m.pos, c.y}, {m.pos, c.bottom()}}
                                            : std::vector<Point>{{c.x, m.pos}, {c.right(), m.pos}};
                        line.color = kGridLine;
                        line.dash = kGridDash;
                        grp.prims.push_back(std::move(line));
                    }
                }
                auto along = [&](double pos, double normal) {
                    return horiz ? Point{pos, normal} : Point{normal, pos};
                };
                grp.prims.push_back(
                    PolylinePrim{{along(ag.span_lo, ag.line), along(ag.span_hi, ag.line)}, kInk, 1.0, {}, false});
                for (const auto* marks : {&ag.majors, &ag.minors}) {
                    const double len = marks == &ag.majors ? layout::kMajorTickLength : layout::kMinorTickLength;
                    for (const auto& m : *marks) {
                        grp.prims.push_back(PolylinePrim{
                            {along(m.pos, ag.line), along(m.pos, ag.line + ag.tick_sign * len)}, kInk, 1.0, {}, false});
                    }
                }
                for (const auto& t : ag.labels) {
                    emit_text(grp.prims, t, kInk);
                }
                if (ag.axis_label) {
                    emit_text(grp.prims, *ag.axis_label, kInk);
                }
            }
            out_.groups.push_back(std::move(grp));
        }
    }

    void decoration(const PlotNode& n)
    {
        const auto& g = geo(n);
        DrawGroup grp;
        grp.component = scene::decoration_component(n.id);
        grp.kind = GroupKind::Decoration;
        grp.clip = g.cell;
        util::Hasher h;
        h.add(std::string_view(grp.component));
        h.add(std::string_view(n.title));
        h.add(g.title.has_value());
        if (g.title) {
            hash_text(h, *g.title);
        }
        hash_rect(h, g.cell);
        grp.hash = h.digest();
        if (g.title) {
            emit_text(grp.prims, *g.title, kInk);
        }
        out_.groups.push_back(std::move(grp));
    }

    const layout::GeometryMap& geo_;
    DrawList& out_;
    std::map<std::string, Json> json_;
};

}  // namespace

std::size_t DrawList::primitive_count() const noexcept
{
    std::size_t n = 1;
    for (const auto& g : groups) {
        n += g.prims.size();
    }
    return n;
}

DrawList emit_drawlist(const scene::Scene& scene, const layout::GeometryMap& geometry)
{
    DrawList list;
    list.width = geometry.width;
    list.height = geometry.height;
    list.background = RectPrim{Rect{0.0, 0.0, geometry.width - 1.0, geometry.height - 1.0}, kBackground};
    Emitter(geometry, list).run(scene.root);
    return list;
}

DrawList emit_drawlist(const scene::Scene& scene, int width, int height)
{
    return emit_drawlist(scene, layout::compute_layout(scene, width, height));
}

}  // namespace plotforge::render
