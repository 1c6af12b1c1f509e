#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "plotforge/export/eps.hpp"
#include "plotforge/export/png.hpp"
#include "plotforge/render/rasterize.hpp"
#include "plotforge/render/render.hpp"
#include "png_decode.hpp"
#include "ps_interp.hpp"

using namespace plotforge;
using fixtures::decode_png;
using render::Raster;

namespace {

Raster solid(int w, int h, std::array<std::uint8_t, 4> c)
{
    Raster r;
    r.width = w;
    r.height = h;
    for (int i = 0; i < w * h; ++i) {
        r.pixels.insert(r.pixels.end(), c.begin(), c.end());
    }
    return r;
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t at)
{
    return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) | b[at + 3];
}

}  // namespace

TEST_CASE("1x1 red PNG decodes with an independent decoder", "[export]")
{
    const auto bytes = exporter::encode_png(solid(1, 1, {255, 0, 0, 255}));
    const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    REQUIRE(bytes.size() > 33);
    CHECK(std::equal(sig, sig + 8, bytes.begin()));
    CHECK(std::string(bytes.begin() + 12, bytes.begin() + 16) == "IHDR");
    CHECK(be32(bytes, 16) == 1);
    CHECK(be32(bytes, 20) == 1);
    CHECK(bytes[24] == 8);  // bit depth
    CHECK(bytes[25] == 6);  // RGBA
    CHECK(bytes[28] == 0);  // non-interlaced
    const auto d = decode_png(bytes);
    REQUIRE(d.ok);
    CHECK(d.width == 1);
    CHECK(d.height == 1);
    CHECK(d.rgba == std::vector<std::uint8_t>{255, 0, 0, 255});
}

TEST_CASE("PNG encoding is byte-identical for identical rasters", "[export]")
{
    const auto sc = fixtures::minimal_scene();
    const auto a = render::render_scene(sc, 320, 240).raster;
    const auto b = render::render_scene(sc, 320, 240).raster;
    CHECK(exporter::encode_png(a) == exporter::encode_png(b));
}

TEST_CASE("random rasters round-trip through PNG", "[export]")
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 64);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int k = 0; k < 100; ++k) {
        Raster r;
        r.width = dim(rng);
        r.height = dim(rng);
        r.pixels.resize(static_cast<std::size_t>(r.width) * r.height * 4);
        for (auto& v : r.pixels) {
            v = static_cast<std::uint8_t>(byte(rng));
        }
        const auto d = decode_png(exporter::encode_png(r));
        REQUIRE(d.ok);
        REQUIRE(d.width == r.width);
        REQUIRE(d.height == r.height);
        REQUIRE(d.rgba == r.pixels);
    }
}

TEST_CASE("write_png reports the destination on failure", "[export]")
{
    const auto info = fixtures::capture_error(
        [] { exporter::write_png(solid(2, 2, {0, 0, 0, 255}), "/nonexistent-dir/out.png"); });
    CHECK(info.code == ErrorCode::IoFailure);
    CHECK(info.describe().find("/nonexistent-dir/out.png") != std::string::npos);
}

TEST_CASE("PostScript numbers and strings", "[export]")
{
    CHECK(exporter::ps_number(0.0) == "0");
    CHECK(exporter::ps_number(-0.0001) == "0");
    CHECK(exporter::ps_number(1.5) == "1.5");
    CHECK(exporter::ps_number(2.12345) == "2.123");
    CHECK(exporter::ps_number(-3.0) == "-3");
    CHECK(exporter::ps_string("a(b)c\\") == "a\\(b\\)c\\\\");
    CHECK(exporter::ps_string("12°30′15″") == "12\\26030'15\"");
    CHECK(exporter::ps_string("−5") == "-5");
    CHECK(exporter::ps_string("漢") == "?");
}

TEST_CASE("EPS header declares the requested bounding box", "[export]")
{
    const auto list = render::emit_drawlist(fixtures::minimal_scene(), 400, 300);
    const auto eps = exporter::encode_eps(list, 400, 300);
    CHECK(eps.rfind("%!PS-Adobe-3.0 EPSF-3.0\n", 0) == 0);
    CHECK(eps.find("\n%%BoundingBox: 0 0 400 300\n") != std::string::npos);
    CHECK(eps.size() >= 6);
    CHECK(eps.substr(eps.size() - 6) == "%%EOF\n");
}

TEST_CASE("EPS flips the device y axis", "[export]")
{
    render::DrawList list;
    list.width = 400;
    list.height = 300;
    list.background = render::RectPrim{layout::Rect{0, 0, 400, 300}, {255, 255, 255, 255}};
    render::DrawGroup g;
    g.component = "test/layer/line";
    g.clip = layout::Rect{0, 0, 400, 300};
    g.prims.push_back(render::PolylinePrim{{{0, 0}, {400, 300}}, {0, 0, 0, 255}, 1.0, {}, false});
    list.groups.push_back(g);
    const auto eps = exporter::encode_eps(list, 400, 300);
    CHECK(eps.find("0 300 moveto\n400 0 lineto\n") != std::string::npos);
}

TEST_CASE("EPS passes the validator and is deterministic", "[export]")
{
    const auto sc = fixtures::build(fixtures::two_children_doc(2.0, 1.0));
    const auto list = render::emit_drawlist(sc, 400, 300);
    const auto eps = exporter::encode_eps(list, 400, 300);
    CHECK(eps == exporter::encode_eps(render::emit_drawlist(sc, 400, 300), 400, 300));
    const auto res = ps::run(eps, 400, 300);
    INFO((res.errors.empty() ? std::string() : res.errors.front()));
    CHECK(res.errors.empty());
    CHECK(res.bbox_w == 400);
    CHECK(res.bbox_h == 300);
    CHECK(res.operators_run > 100);
}

TEST_CASE("validator rejects malformed documents", "[export]")
{
    const auto eps = exporter::encode_eps(render::emit_drawlist(fixtures::minimal_scene(), 200, 150), 200, 150);
    CHECK(ps::run(eps, 200, 150).errors.empty());

    auto no_eof = eps.substr(0, eps.size() - 6);
    CHECK_FALSE(ps::run(no_eof, 200, 150).errors.empty());

    auto unknown = eps;
    unknown.insert(unknown.find("%%Page: 1 1\n"), "1 2 frobnicate\n");
    CHECK_FALSE(ps::run(unknown, 200, 150).errors.empty());

    auto unbalanced = eps;
    unbalanced.insert(unbalanced.find("%%Page: 1 1\n"), "gsave\n");
    CHECK_FALSE(ps::run(unbalanced, 200, 150).errors.empty());

    auto underflow = eps;
    underflow.insert(underflow.find("%%Page: 1 1\n"), "lineto\n");
    CHECK_FALSE(ps::run(underflow, 200, 150).errors.empty());

    auto two_boxes = eps;
    two_boxes.insert(two_boxes.find("%%EndComments"), "%%BoundingBox: 0 0 1 1\n");
    CHECK_FALSE(ps::run(two_boxes, 200, 150).errors.empty());
}

TEST_CASE("EPS rasterizes close to the PNG renderer", "[export]")
{
    auto doc = fixtures::two_children_doc(2.0, 1.0);
    auto& left = doc["plots"][0]["children"][0];
    left["axes"][0]["grid_lines"] = true;
    left["axes"][1]["grid_lines"] = true;
    left["layers"].push_back({{"id", "heat"},
                              {"x_transform_ref", "x"},
                              {"y_transform_ref", "y"},
                              {"z_order", -1},
                              {"graphs", scene::Json::array({{{"type", "grid"},
                                                              {"values", {{0, 1, 2}, {3, 4, 5}}},
                                                              {"x_extent", {{"lo", 10}, {"hi", 60}}},
                                                              {"y_extent", {{"lo", 1}, {"hi", 6}}},
                                                              {"ramp", "heat"}}})}});
    left["layers"][0]["graphs"][0]["style"] = {
        {"color", "#d62728ff"}, {"line", "dashed"}, {"dash_pattern", {6, 3}}, {"symbol", "triangle"}};
    left["annotations"] = scene::Json::array(
        {{{"type", "rect"}, {"x0", 55}, {"x1", 90}, {"y0", 6}, {"y1", 9},
          {"x_transform_ref", "x"}, {"y_transform_ref", "y"}, {"fill", "#2ca02c80"}},
         {{"type", "text"}, {"frame", "box"}, {"x", 0.05}, {"y", 0.9}, {"text", "peak (a)"}}});
    const auto sc = fixtures::build(doc);
    const auto list = render::emit_drawlist(sc, 480, 320);
    const auto raster = render::rasterize_drawlist(list);
    const auto res = ps::run(exporter::encode_eps(list, 480, 320), 480, 320);
    INFO((res.errors.empty() ? std::string() : res.errors.front()));
    REQUIRE(res.errors.empty());
    std::size_t ink = 0;
    for (std::size_t i = 0; i < res.canvas.rgba.size(); i += 4) {
        ink += res.canvas.rgba[i] != 255 || res.canvas.rgba[i + 1] != 255 || res.canvas.rgba[i + 2] != 255;
    }
    CHECK(ink > 10000);
    const double diff = ps::differing_fraction(res.canvas, raster.pixels, 8);
    INFO("differing fraction " << diff);
    CHECK(diff <= 0.005);
}

TEST_CASE("write_eps writes the encoded text", "[export]")
{
    const auto list = render::emit_drawlist(fixtures::minimal_scene(), 200, 150);
    const auto path = std::filesystem::temp_directory_path() / "plotforge_test_export.eps";
    exporter::write_eps(list, 200, 150, path);
    std::ifstream in(path, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == exporter::encode_eps(list, 200, 150));
    std::filesystem::remove(path);
}
