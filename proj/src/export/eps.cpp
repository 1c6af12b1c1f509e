#include "plotforge/export/eps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "plotforge/export/png.hpp"
#include "plotforge/render/rasterize.hpp"
#include "plotforge/util/utf8.hpp"

namespace plotforge::exporter {

using namespace render;

std::string ps_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    if (s == "-0") {
        s = "0";
    }
    return s;
}

std::string ps_string(const std::string& utf8)
{
    std::string out;
    for (char32_t cp : util::decode_utf8(utf8)) {
        switch (cp) {
        case U'′': cp = U'\''; break;
        case U'″': cp = U'"'; break;
        case U'−': cp = U'-'; break;
        default: break;
        }
        if (cp > 0xFF || cp < 0x20) {
            cp = U'?';
        }
        if (cp == U'(' || cp == U')' || cp == U'\\') {
            out += '\\';
            out += static_cast<char>(cp);
        } else if (cp >= 0x7F) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\%03o", static_cast<unsigned>(cp));
            out += buf;
        } else {
            out += static_cast<char>(cp);
        }
    }
    return out;
}

namespace {

const char* kProlog =
    "%%BeginProlog\n"
    "/Helvetica-ISO /Helvetica findfont dup length dict begin\n"
    "{1 index /FID ne {def} {pop pop} ifelse} forall\n"
    "/Encoding ISOLatin1Encoding def currentdict end definefont pop\n"
    "%%EndProlog\n";

class Writer {
public:
    Writer(const DrawList& list, int w, int h)
        : list_(list), w_(w), h_(h), sx_(static_cast<double>(w) / list.width), sy_(static_cast<double>(h) / list.height)
    {
    }

    std::string run()
    {
        out_ += "%!PS-Adobe-3.0 EPSF-3.0\n";
        out_ += "%%BoundingBox: 0 0 " + std::to_string(w_) + " " + std::to_string(h_) + "\n";
        out_ += "%%Creator: plotforge\n";
        out_ += "%%LanguageLevel: 2\n";
        out_ += "%%Pages: 1\n";
        out_ += "%%EndComments\n";
        out_ += kProlog;
        out_ += "%%Page: 1 1\n";
        out_ += "gsave\n1 setlinecap 1 setlinejoin\n";
        prim(list_.background);
        for (const auto& g : list_.groups) {
            if (g.prims.empty()) {
                continue;
            }
            out_ += "% " + g.component + "\n";
            out_ += "gsave newpath ";
            rect_path(g.clip);
            out_ += " rectclip\n";
            for (const auto& p : g.prims) {
                std::visit([&](const auto& v) { prim(v); }, p);
            }
            out_ += "grestore\n";
        }
        out_ += "grestore\nshowpage\n%%Trailer\n%%EOF\n";
        return std::move(out_);
    }

private:
    std::string X(double x) const { return ps_number(x * sx_); }
    std::string Y(double y) const { return ps_number(h_ - y * sy_); }

    void color(Rgba c)
    {
        // Pre-blend against white.
        const double a = c.a / 255.0;
        auto ch = [&](std::uint8_t v) { return ps_number((v * a + 255.0 * (1.0 - a)) / 255.0); };
        out_ += ch(c.r) + " " + ch(c.g) + " " + ch(c.b) + " setrgbcolor\n";
    }

    void rect_path(const layout::Rect& r)
    {
        out_ += X(r.x) + " " + Y(r.bottom()) + " " + ps_number(r.w * sx_) + " " + ps_number(r.h * sy_);
    }

    void prim(const RectPrim& r)
    {
        color(r.color);
        rect_path(r.rect);
        out_ += " rectfill\n";
    }

    void path(const std::vector<Point>& pts)
    {
        out_ += "newpath\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            out_ += X(pts[i].x) + " " + Y(pts[i].y) + (i == 0 ? " moveto\n" : " lineto\n");
        }
    }

    void prim(const PolylinePrim& p)
    {
        if (p.points.empty()) {
            return;
        }
        color(p.color);
        out_ += ps_number(p.width * sx_) + " setlinewidth [";
        for (std::size_t i = 0; i < p.dash.size(); ++i) {
            out_ += (i ? " " : "") + ps_number(p.dash[i] * sx_);
        }
        out_ += "] 0 setdash\n";
        std::vector<Point> pts = p.points;
        if (pts.size() == 1) {
            pts.push_back(pts[0]);
        }
        path(pts);
        if (p.closed) {
            out_ += "closepath\n";
        }
        out_ += "stroke\n";
    }

    void prim(const PolygonPrim& p)
    {
        if (p.points.size() < 3) {
            return;
        }
        color(p.color);
        path(p.points);
        out_ += "closepath eofill\n";
    }

    void prim(const TextPrim& t)
    {
        color(t.color);
        out_ += "/Helvetica-ISO findfont " + ps_number(t.size * sy_) + " scalefont setfont\n";
        if (t.rotation == 90) {
            out_ += "gsave " + X(t.x) + " " + Y(t.y) + " translate 90 rotate 0 0 moveto (" + ps_string(t.text) +
                    ") show grestore\n";
        } else {
            out_ += X(t.x) + " " + Y(t.y) + " moveto (" + ps_string(t.text) + ") show\n";
        }
    }

    // Resampled to the device pixel grid so nearest-neighbour placement
    // matches the raster renderer.
    void prim(const ImagePrim& im)
    {
        if (im.cols == 0 || im.rows == 0) {
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
        PixelBox box = pixel_box(layout::Rect{xa, ya, xb - xa, yb - ya}).intersect(PixelBox{0, 0, list_.width, list_.height});
        if (box.empty()) {
            return;
        }
        Surface s(box);
        draw_primitive(s, im, box);
        const int w = box.width();
        const int h = box.height();
        out_ += "gsave " + X(box.x0 - 0.5) + " " + Y(box.y1 - 0.5) + " translate " + ps_number(w * sx_) + " " +
                ps_number(h * sy_) + " scale\n";
        out_ += "/imgrow " + std::to_string(w * 3) + " string def\n";
        out_ += std::to_string(w) + " " + std::to_string(h) + " 8 [" + std::to_string(w) + " 0 0 -" +
                std::to_string(h) + " 0 " + std::to_string(h) +
                "] {currentfile imgrow readhexstring pop} false 3 colorimage\n";
        static const char* hex = "0123456789abcdef";
        for (int y = box.y0; y < box.y1; ++y) {
            std::string line;
            for (int x = box.x0; x < box.x1; ++x) {
                const std::uint8_t* px = s.at(x, y);
                // transparent cells over white
                const unsigned inv = 255u - px[3];
                for (int c = 0; c < 3; ++c) {
                    const unsigned v = px[c] + inv;
                    line += hex[(v >> 4) & 0xF];
                    line += hex[v & 0xF];
                }
            }
            for (std::size_t i = 0; i < line.size(); i += 72) {
                out_ += line.substr(i, 72) + "\n";
            }
        }
        out_ += "grestore\n";
    }

    const DrawList& list_;
    int w_;
    int h_;
    double sx_;
    double sy_;
    std::string out_;
};

}  // namespace

std::string encode_eps(const DrawList& list, int width_pt, int height_pt)
{
    return Writer(list, width_pt, height_pt).run();
}

void write_eps(const DrawList& list, int width_pt, int height_pt, const std::filesystem::path& path)
{
    const std::string text = encode_eps(list, width_pt, height_pt);
    write_file(path, text.data(), text.size());
}

}  // namespace plotforge::exporter
