#include "plotforge/render/rasterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plotforge/util/utf8.hpp"

namespace plotforge::render {

namespace {

#include "font_atlas.inc"

static_assert(kAtlasCellW == kGlyphCellW && kAtlasCellH == kGlyphCellH);
static_assert(kAtlasBaseline == kGlyphBaseline && kAtlasEm == kGlyphEm);

PixelBox canvas_clip(const layout::Rect& r, int w, int h)
{
    return pixel_box(r).intersect(PixelBox{0, 0, w, h});
}

std::uint8_t to_byte(double coverage)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(coverage, 0.0, 1.0) * 255.0));
}

// Per-primitive coverage accumulator (max rule).
class Mask {
public:
    explicit Mask(PixelBox box) : box_(box), cov_(static_cast<std::size_t>(std::max(0, box.width())) *
                                                   static_cast<std::size_t>(std::max(0, box.height())),
                                               0.0f)
    {
    }

    const PixelBox& box() const { return box_; }

    void put(int x, int y, double c)
    {
        float& slot = cov_[static_cast<std::size_t>(y - box_.y0) * box_.width() + (x - box_.x0)];
        slot = std::max(slot, static_cast<float>(c));
    }

    void segment(Point a, Point b, double width)
    {
        const double hw = width / 2.0;
        const double reach = hw + 1.0;
        PixelBox sb{static_cast<int>(std::floor(std::min(a.x, b.x) - reach)),
                    static_cast<int>(std::floor(std::min(a.y, b.y) - reach)),
                    static_cast<int>(std::ceil(std::max(a.x, b.x) + reach)) + 1,
                    static_cast<int>(std::ceil(std::max(a.y, b.y) + reach)) + 1};
        sb = sb.intersect(box_);
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        for (int y = sb.y0; y < sb.y1; ++y) {
            for (int x = sb.x0; x < sb.x1; ++x) {
                double t = 0.0;
                if (len2 > 0.0) {
                    t = std::clamp(((x - a.x) * dx + (y - a.y) * dy) / len2, 0.0, 1.0);
                }
                const double ex = x - (a.x + t * dx);
                const double ey = y - (a.y + t * dy);
                const double c = hw + 0.5 - std::sqrt(ex * ex + ey * ey);
                if (c > 0.0) {
                    put(x, y, std::min(c, 1.0));
                }
            }
        }
    }

    void flush(Surface& s, Rgba color) const
    {
        std::size_t i = 0;
        for (int y = box_.y0; y < box_.y1; ++y) {
            for (int x = box_.x0; x < box_.x1; ++x, ++i) {
                if (cov_[i] > 0.0f) {
                    s.blend(x, y, color, to_byte(cov_[i]));
                }
            }
        }
    }

private:
    PixelBox box_;
    std::vector<float> cov_;
};

PixelBox points_box(const std::vector<Point>& pts, double reach)
{
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = x0;
    double x1 = -x0;
    double y1 = -x0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    if (!(x0 <= x1) || !(y0 <= y1)) {
        return PixelBox{};
    }
    // Clamp before converting so far-away points cannot overflow int.
    auto lo = [](double v) { return static_cast<int>(std::clamp(std::floor(v), -1e8, 1e8)); };
    auto hi = [](double v) { return static_cast<int>(std::clamp(std::ceil(v), -1e8, 1e8)) + 1; };
    return PixelBox{lo(x0 - reach), lo(y0 - reach), hi(x1 + reach), hi(y1 + reach)};
}

// Liang-Barsky clip of segment a-b against a box; false when fully outside.
bool clip_segment(Point& a, Point& b, double x0, double y0, double x1, double y1)
{
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) {
                return false;
            }
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, r);
        } else {
            t1 = std::min(t1, r);
        }
        if (t0 > t1) {
            return false;
        }
    }
    const Point a0 = a;
    a = Point{a0.x + t0 * dx, a0.y + t0 * dy};
    b = Point{a0.x + t1 * dx, a0.y + t1 * dy};
    return true;
}

void draw_polyline(Surface& s, const PolylinePrim& p, const PixelBox& clip)
{
    if (p.points.empty() || p.width <= 0.0) {
        return;
    }
    const PixelBox box = points_box(p.points, p.width / 2.0 + 1.0).intersect(clip);
    if (box.empty()) {
        return;
    }
    Mask mask(box);
    std::vector<Point> pts = p.points;
    if (p.closed && pts.size() > 2) {
        pts.push_back(pts.front());
    }
    // Geometry far outside the box is clipped first; the margin keeps
    // coverage near the edges unchanged.
    const double m = p.width / 2.0 + 2.0;
    const double cx0 = box.x0 - m;
    const double cy0 = box.y0 - m;
    const double cx1 = box.x1 + m;
    const double cy1 = box.y1 + m;
    auto emit = [&](Point a, Point b) {
        if (clip_segment(a, b, cx0, cy0, cx1, cy1)) {
            mask.segment(a, b, p.width);
        }
    };

    double pattern_total = 0.0;
    for (double d : p.dash) {
        pattern_total += d;
    }
    if (pts.size() == 1) {
        mask.segment(pts[0], pts[0], p.width);
    } else if (p.dash.empty() || pattern_total <= 0.0) {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            emit(pts[i], pts[i + 1]);
        }
    } else {
        // Cycle of on/off entries; odd-length patterns repeat twice so the
        // phase alternates as in PostScript.
        std::vector<double> cycle = p.dash;
        if (cycle.size() % 2 == 1) {
            cycle.insert(cycle.end(), p.dash.begin(), p.dash.end());
        }
        const double cycle_len = pattern_total * static_cast<double>(cycle.size() / p.dash.size());
        double phase = 0.0;  // arc length into the cycle at the segment start
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Point a = pts[i];
            const Point b = pts[i + 1];
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            Point ca = a;
            Point cb = b;
            if (len > 0.0 && clip_segment(ca, cb, cx0, cy0, cx1, cy1)) {
                const double s0 = std::hypot(ca.x - a.x, ca.y - a.y);
                const double s1 = std::hypot(cb.x - a.x, cb.y - a.y);
                // Locate the entry that holds arc position s0.
                double at = std::fmod(phase + s0, cycle_len);
                std::size_t idx = 0;
                while (at >= cycle[idx]) {
                    at -= cycle[idx];
                    idx = (idx + 1) % cycle.size();
                }
                double left = cycle[idx] - at;
                double pos = s0;
                while (pos < s1) {
                    const double take = std::min(left, s1 - pos);
                    if (idx % 2 == 0 && take > 0.0) {
                        const double t0 = pos / len;
                        const double t1 = (pos + take) / len;
                        mask.segment(Point{a.x + (b.x - a.x) * t0, a.y + (b.y - a.y) * t0},
                                     Point{a.x + (b.x - a.x) * t1, a.y + (b.y - a.y) * t1}, p.width);
                    }
                    pos += take;
                    left -= take;
                    if (left <= 0.0) {
                        idx = (idx + 1) % cycle.size();
                        left = cycle[idx];
                    }
                }
            }
            phase = std::fmod(phase + len, cycle_len);
        }
    }
    mask.flush(s, p.color);
}

void draw_rect(Surface& s, const RectPrim& r, const PixelBox& clip)
{
    const PixelBox box = pixel_box(r.rect).intersect(clip);
    for (int y = box.y0; y < box.y1; ++y) {
        for (int x = box.x0; x < box.x1; ++x) {
            s.blend(x, y, r.color, 255);
        }
    }
}

bool inside_even_odd(const std::vector<Point>& poly, double x, double y)
{
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point& a = poly[i];
        const Point& b = poly[j];
        if ((a.y > y) != (b.y > y)) {
            const double xi = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x < xi) {
                in = !in;
            }
        }
    }
    return in;
}

void draw_polygon(Surface& s, const PolygonPrim& p, const PixelBox& clip)
{
    if (p.points.size() < 3) {
        return;
    }
    const PixelBox box = points_box(p.points, 1.0).intersect(clip);
    for (int y = box.y0; y < box.y1; ++y) {
        for (int x = box.x0; x < box.x1; ++x) {
            int hits = 0;
            for (int sy = 0; sy < 4; ++sy) {
                for (int sx = 0; sx < 4; ++sx) {
                    hits += inside_even_odd(p.points, x - 0.375 + 0.25 * sx, y - 0.375 + 0.25 * sy) ? 1 : 0;
                }
            }
            if (hits > 0) {
                s.blend(x, y, p.color, to_byte(hits / 16.0));
            }
        }
    }
}

// Box-filtered coverage of a glyph over the texel rectangle [u0,u1) x [v0,v1).
double glyph_area(const unsigned char* g, double u0, double u1, double v0, double v1)
{
    const int c0 = std::max(0, static_cast<int>(std::floor(u0)));
    const int c1 = std::min(kGlyphCellW, static_cast<int>(std::ceil(u1)));
    const int r0 = std::max(0, static_cast<int>(std::floor(v0)));
    const int r1 = std::min(kGlyphCellH, static_cast<int>(std::ceil(v1)));
    double sum = 0.0;
    for (int r = r0; r < r1; ++r) {
        const double wy = std::min<double>(r + 1, v1) - std::max<double>(r, v0);
        if (wy <= 0.0) {
            continue;
        }
        for (int c = c0; c < c1; ++c) {
            const double wx = std::min<double>(c + 1, u1) - std::max<double>(c, u0);
            if (wx > 0.0) {
                sum += wx * wy * g[r * kGlyphCellW + c];
            }
        }
    }
    return sum / ((u1 - u0) * (v1 - v0) * 255.0);
}

void draw_text(Surface& s, const TextPrim& t, const PixelBox& clip)
{
    const auto cps = util::decode_utf8(t.text);
    if (cps.empty() || t.size <= 0.0) {
        return;
    }
    const double scale = t.size / kGlyphEm;  // device px per texel
    const double advance = layout::kAdvance * t.size;
    const double ascent = kGlyphBaseline * scale;
    const double descent = (kGlyphCellH - kGlyphBaseline) * scale;
    for (std::size_t k = 0; k < cps.size(); ++k) {
        if (cps[k] == U' ') {
            continue;
        }
        const unsigned char* g = glyph_coverage(cps[k]);
        const double pen = static_cast<double>(k) * advance;
        // Glyph box in device space.
        double gx0, gx1, gy0, gy1;
        if (t.rotation == 90) {
            gx0 = t.x - ascent;
            gx1 = t.x + descent;
            gy0 = t.y - pen - advance;
            gy1 = t.y - pen;
        } else {
            gx0 = t.x + pen;
            gx1 = t.x + pen + advance;
            gy0 = t.y - ascent;
            gy1 = t.y + descent;
        }
        PixelBox box{static_cast<int>(std::floor(gx0)), static_cast<int>(std::floor(gy0)),
                     static_cast<int>(std::ceil(gx1)) + 1, static_cast<int>(std::ceil(gy1)) + 1};
        box = box.intersect(clip);
        for (int y = box.y0; y < box.y1; ++y) {
            for (int x = box.x0; x < box.x1; ++x) {
                double u0, u1, v0, v1;  // glyph-local, device units
                if (t.rotation == 90) {
                    u0 = t.y - y - 0.5 - pen;
                    v0 = x - 0.5 - t.x;
                } else {
                    u0 = x - 0.5 - t.x - pen;
                    v0 = y - 0.5 - t.y;
                }
                u1 = u0 + 1.0;
                v1 = v0 + 1.0;
                const double c = glyph_area(g, u0 / scale, u1 / scale, v0 / scale + kGlyphBaseline,
                                            v1 / scale + kGlyphBaseline);
                if (c > 0.0) {
                    s.blend(x, y, t.color, to_byte(c));
                }
            }
        }
    }
}

// Cell index per pixel coordinate along one axis; -1 outside.
std::vector<int> cell_lookup(const std::vector<double>& edges, int p0, int p1)
{
    std::vector<int> out(static_cast<std::size_t>(std::max(0, p1 - p0)), -1);
    const std::size_t n = edges.size() - 1;
    const bool increasing = edges.back() >= edges.front();
    for (int p = p0; p < p1; ++p) {
        const double c = p;
        int idx = -1;
        if (increasing) {
            if (c >= edges.front() && c <= edges.back()) {
                auto it = std::upper_bound(edges.begin(), edges.end(), c);
                idx = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, n - 1));
            }
        } else if (c <= edges.front() && c >= edges.back()) {
            auto it = std::upper_bound(edges.begin(), edges.end(), c, std::greater<double>());
            idx = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, n - 1));
        }
        out[static_cast<std::size_t>(p - p0)] = idx;
    }
    return out;
}

void draw_image(Surface& s, const ImagePrim& im, const PixelBox& clip)
{
    if (im.cols == 0 || im.rows == 0 || im.x_edges.size() != im.cols + 1 || im.y_edges.size() != im.rows + 1) {
        return;
    }
    for (double e : im.x_edges) {
        if (!std::isfinite(e)) {
            return;
        }
    }
    for (double e : im.y_edges) {
        if (!std::isfinite(e)) {
            return;
        }
    }
    const auto [xa, xb] = std::minmax(im.x_edges.front(), im.x_edges.back());
    const auto [ya, yb] = std::minmax(im.y_edges.front(), im.y_edges.back());
    const PixelBox box = pixel_box(layout::Rect{xa, ya, xb - xa, yb - ya}).intersect(clip);
    if (box.empty()) {
        return;
    }
    const auto cols = cell_lookup(im.x_edges, box.x0, box.x1);
    const auto rows = cell_lookup(im.y_edges, box.y0, box.y1);
    for (int y = box.y0; y < box.y1; ++y) {
        const int r = rows[static_cast<std::size_t>(y - box.y0)];
        if (r < 0) {
            continue;
        }
        for (int x = box.x0; x < box.x1; ++x) {
            const int c = cols[static_cast<std::size_t>(x - box.x0)];
            if (c < 0) {
                continue;
            }
            s.blend(x, y, im.cells[static_cast<std::size_t>(r) * im.cols + static_cast<std::size_t>(c)], 255);
        }
    }
}

}  // namespace

const unsigned char* glyph_coverage(char32_t cp) noexcept
{
    const auto* end = kAtlasCodepoints + kAtlasGlyphCount;
    const auto* it = std::lower_bound(kAtlasCodepoints, end, cp);
    if (it == end || *it != cp) {
        it = std::lower_bound(kAtlasCodepoints, end, U'?');
    }
    return kAtlasCoverage[it - kAtlasCodepoints];
}

void draw_primitive(Surface& surface, const Primitive& prim, const PixelBox& clip)
{
    const PixelBox c = clip.intersect(surface.box());
    if (c.empty()) {
        return;
    }
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PolylinePrim>) {
                draw_polyline(surface, p, c);
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                draw_rect(surface, p, c);
            } else if constexpr (std::is_same_v<T, PolygonPrim>) {
                draw_polygon(surface, p, c);
            } else if constexpr (std::is_same_v<T, TextPrim>) {
                draw_text(surface, p, c);
            } else {
                draw_image(surface, p, c);
            }
        },
        prim);
}

void draw_group(Surface& surface, const DrawGroup& group)
{
    const PixelBox clip = pixel_box(group.clip);
    for (const auto& p : group.prims) {
        draw_primitive(surface, p, clip);
    }
}

Surface rasterize_group(const DrawGroup& group, int canvas_width, int canvas_height)
{
    Surface tile(canvas_clip(group.clip, canvas_width, canvas_height));
    draw_group(tile, group);
    return tile;
}

Raster rasterize_drawlist(const DrawList& list)
{
    const PixelBox full{0, 0, list.width, list.height};
    Surface canvas(full);
    draw_primitive(canvas, list.background, full);
    for (const auto& g : list.groups) {
        Surface layer(full);
        draw_group(layer, g);
        canvas.composite(layer);
    }
    return canvas.to_raster();
}

}  // namespace plotforge::render
